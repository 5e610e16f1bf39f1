fn main() -> std::process::ExitCode {
    qprep::cli::main()
}
