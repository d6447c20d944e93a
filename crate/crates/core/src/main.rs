fn main() {
    std::process::exit(lagan::cli::run(std::env::args_os()));
}
