fn main() {
    std::process::exit(golomb::cli::run(std::env::args_os()));
}
