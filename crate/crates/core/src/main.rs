fn main() {
    std::process::exit(ideal_space::cli::run(std::env::args_os()));
}
