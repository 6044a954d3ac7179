fn main() {
    std::process::exit(ishuffle::cli::run(std::env::args_os()));
}
