fn main() {
    std::process::exit(cpfcert::cli::run(std::env::args_os()));
}
