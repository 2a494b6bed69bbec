fn main() {
    std::process::exit(baxterlab::cli::run(std::env::args_os()));
}
