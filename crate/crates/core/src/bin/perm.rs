fn main() {
    std::process::exit(permlab::cli::run(std::env::args_os()));
}
