fn main() {
    std::process::exit(qswitch::cli::run(std::env::args_os()));
}
