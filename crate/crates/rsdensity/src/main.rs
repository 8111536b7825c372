fn main() {
    std::process::exit(rsdensity::cli::run(std::env::args_os()));
}
