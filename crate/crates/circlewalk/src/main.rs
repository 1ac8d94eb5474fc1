fn main() {
    std::process::exit(circlewalk::cli::run());
}
