fn main() -> std::process::ExitCode {
    fh_lab::harness::cli::main()
}
