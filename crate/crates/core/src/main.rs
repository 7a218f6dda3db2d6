fn main() -> std::process::ExitCode {
    lipgraph::cli::main()
}
