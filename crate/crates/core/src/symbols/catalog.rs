//! Named symbols and self-maps. Names are `family` or `family:parameter`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::selfmap::SelfMap;
use super::series::PowerSeries;
use crate::error::{Error, Result};
use crate::text::parse_complex;

type C64 = Complex64;

/// A catalog entry: either a plain symbol or a certified self-map.
#[derive(Clone, Debug)]
pub enum CatalogEntry {
    Series(PowerSeries),
    Map(SelfMap),
}

impl CatalogEntry {
    pub fn series(&self) -> &PowerSeries {
        match self {
            CatalogEntry::Series(s) => s,
            CatalogEntry::Map(m) => m.series(),
        }
    }
}

/// `f(z) = sum z^n/(n+1)`, the symbol whose Hankel matrix is the Hilbert matrix.
pub fn hilbert() -> PowerSeries {
    PowerSeries::closed("hilbert", 1.0, true, |k| C64::new(1.0 / (k as f64 + 1.0), 0.0))
}

/// `f` with `f^(2^j + 1) = 1/(2^j + 1)`, so `f' = sum z^(2^j)` is a Bloch function.
pub fn lacunary_bloch() -> PowerSeries {
    PowerSeries::closed("lacunary_bloch", 0.5, true, |k| {
        if k >= 2 && (k - 1).is_power_of_two() {
            C64::new(1.0 / k as f64, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

pub fn monomial() -> PowerSeries {
    PowerSeries::explicit_real("monomial", &[0.0, 1.0])
}

/// Normalized Szegő kernel `(1-a^2)^(1/2) / (1 - a z)`, `a` in (0,1).
pub fn szego(a: f64) -> Result<PowerSeries> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Config(format!("szego parameter {a} outside (0,1)")));
    }
    Ok(PowerSeries::rational(
        format!("szego:{a}"),
        vec![C64::new((1.0 - a * a).sqrt(), 0.0)],
        vec![C64::new(1.0, 0.0), C64::new(-a, 0.0)],
    ))
}

/// `z(1-z)/2`: touches the circle only at -1 and stays below 1/8 on (0,1).
pub fn lens() -> SelfMap {
    SelfMap::certified(
        PowerSeries::explicit_real("lens", &[0.0, 0.5, -0.5]),
        1.0,
        0.125,
        "catalog:lens",
    )
    .expect("lens certificates")
}

pub fn identity_map() -> SelfMap {
    SelfMap::certified(
        PowerSeries::explicit_real("identity_map", &[0.0, 1.0]),
        1.0,
        1.0,
        "catalog:identity_map",
    )
    .expect("identity certificates")
}

pub fn constant(c: C64) -> Result<SelfMap> {
    if c.norm() >= 1.0 {
        return Err(Error::Config(format!("constant map {c} is not inside the disc")));
    }
    SelfMap::certified(
        PowerSeries::explicit(format!("constant:{}", crate::text::format_complex(c)), vec![c]),
        c.norm(),
        c.norm(),
        "catalog:constant",
    )
}

/// Disc automorphism `(a + z)/(1 + conj(a) z)`.
pub fn moebius(a: C64) -> Result<SelfMap> {
    if a.norm() >= 1.0 {
        return Err(Error::Config(format!("moebius parameter {a} is not inside the disc")));
    }
    let series = PowerSeries::rational(
        format!("moebius:{}", crate::text::format_complex(a)),
        vec![a, C64::new(1.0, 0.0)],
        vec![C64::new(1.0, 0.0), a.conj()],
    );
    // Unimodular on the circle, so both suprema equal 1 as r -> 1.
    SelfMap::certified(series, 1.0, 1.0, "catalog:moebius")
}

/// Resolves a catalog name to an entry.
///
/// Accepted: `hilbert`, `lacunary_bloch`, `monomial`, `zero`, `lens`,
/// `identity_map`, `constant:C`, `moebius:A`, `szego:A`, `poly:c0,c1,...`.
/// Complex parameters use the `re+imj` notation.
pub fn resolve(name: &str) -> Result<CatalogEntry> {
    let name = name.trim();
    let (family, param) = match name.split_once(':') {
        Some((f, p)) => (f.trim(), Some(p.trim())),
        None => (name, None),
    };
    let need = || param.ok_or_else(|| Error::Config(format!("`{family}` needs a parameter, e.g. {family}:0.5")));
    let no_param = |p: Option<&str>| match p {
        Some(_) => Err(Error::Config(format!("`{family}` takes no parameter"))),
        None => Ok(()),
    };
    let complex = |p: &str| parse_complex(p).map_err(|e| Error::Config(format!("bad parameter in `{name}`: {e}")));
    match family {
        "hilbert" => no_param(param).map(|_| CatalogEntry::Series(hilbert())),
        "lacunary_bloch" => no_param(param).map(|_| CatalogEntry::Series(lacunary_bloch())),
        "zero" => no_param(param).map(|_| {
            CatalogEntry::Map(
                SelfMap::certified(PowerSeries::zero(), 0.0, 0.0, "catalog:zero").expect("zero certificates"),
            )
        }),
        "monomial" | "identity_map" => no_param(param).map(|_| {
            if family == "monomial" {
                CatalogEntry::Map(
                    SelfMap::certified(monomial(), 1.0, 1.0, "catalog:monomial").expect("monomial certificates"),
                )
            } else {
                CatalogEntry::Map(identity_map())
            }
        }),
        "lens" => no_param(param).map(|_| CatalogEntry::Map(lens())),
        "constant" => constant(complex(need()?)?).map(CatalogEntry::Map),
        "moebius" => moebius(complex(need()?)?).map(CatalogEntry::Map),
        "szego" => {
            let a = complex(need()?)?;
            if a.im != 0.0 {
                return Err(Error::Config("szego parameter must be real".into()));
            }
            szego(a.re).map(CatalogEntry::Series)
        }
        "poly" => {
            let coeffs = need()?
                .split(',')
                .map(|t| complex(t.trim()))
                .collect::<Result<Vec<_>>>()?;
            Ok(CatalogEntry::Series(PowerSeries::explicit(name.to_string(), coeffs)))
        }
        _ => Err(Error::Config(format!("unknown catalog name `{name}`"))),
    }
}

/// Resolves a name that must denote a self-map.
pub fn resolve_map(name: &str) -> Result<SelfMap> {
    match resolve(name)? {
        CatalogEntry::Map(m) => Ok(m),
        CatalogEntry::Series(_) => Err(Error::Config(format!("`{name}` is not a certified self-map"))),
    }
}

pub fn resolve_series(name: &str) -> Result<PowerSeries> {
    resolve(name).map(|e| e.series().clone())
}

/// The named catalog, with representative parameters for the families.
pub fn catalog() -> BTreeMap<String, CatalogEntry> {
    [
        "hilbert",
        "lacunary_bloch",
        "monomial",
        "zero",
        "lens",
        "identity_map",
        "constant:0.3",
        "moebius:0.5",
        "szego:0.5",
    ]
    .into_iter()
    .map(|n| (n.to_string(), resolve(n).expect("catalog entry resolves")))
    .collect()
}

/// Every self-map in [`catalog`].
pub fn catalog_maps() -> Vec<SelfMap> {
    catalog()
        .into_values()
        .filter_map(|e| match e {
            CatalogEntry::Map(m) => Some(m),
            CatalogEntry::Series(_) => None,
        })
        .collect()
}
