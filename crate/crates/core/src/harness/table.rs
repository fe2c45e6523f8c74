use serde::{Deserialize, Serialize};

/// A named table of text cells, written as RFC 4180 CSV and embedded in the JSON result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width in table {}", self.name);
        self.rows.push(row);
    }

    /// Index of `column`, if present.
    pub fn column(&self, column: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == column)
    }

    /// Rows whose `status` column reads `ok`, or all rows when there is no such column.
    pub fn ok_rows(&self) -> impl Iterator<Item = &Vec<String>> {
        let status = self.column("status");
        self.rows
            .iter()
            .filter(move |r| status.map(|i| r[i] == "ok").unwrap_or(true))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&csv_line(&self.columns));
        for r in &self.rows {
            out.push_str(&csv_line(r));
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(cells: &[String]) -> String {
    let mut line = cells.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(",");
    line.push_str("\r\n");
    line
}

/// Shortest round-trip text of a real number, in exponent form when very small or large.
pub fn num(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && a.is_finite() && !(1e-4..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

/// Status cell for a row: `ok` or `error: <message>`.
pub fn status<T>(r: &crate::error::Result<T>) -> String {
    match r {
        Ok(_) => "ok".to_string(),
        Err(e) => format!("error: {e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quoting() {
        let mut t = Table::new("t", &["name", "value", "status"]);
        t.push(vec!["poly:1,2".into(), num(0.5), "ok".into()]);
        t.push(vec!["say \"hi\"".into(), num(1.0), "error: x".into()]);
        assert_eq!(
            t.to_csv(),
            "name,value,status\r\n\"poly:1,2\",0.5,ok\r\n\"say \"\"hi\"\"\",1,error: x\r\n"
        );
        assert_eq!(t.ok_rows().count(), 1);
        assert_eq!(t.column("value"), Some(1));
        assert_eq!(num(2.5e-12), "2.5e-12");
        assert_eq!(num(-0.125), "-0.125");
        assert_eq!(num(2.5e-12).parse::<f64>().unwrap(), 2.5e-12);
    }
}
