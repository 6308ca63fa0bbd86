fn main() {
    std::process::exit(qdeform::run(std::env::args_os()));
}
