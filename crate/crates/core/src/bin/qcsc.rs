fn main() {
    std::process::exit(qcsc::cli::run(std::env::args_os()));
}
