fn main() {
    std::process::exit(cavity_sim::cli::run(std::env::args_os()));
}
