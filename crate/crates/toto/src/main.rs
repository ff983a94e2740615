fn main() {
    std::process::exit(toto::run_from(std::env::args_os()));
}
