fn main() {
    std::process::exit(hypernibble::cli::run());
}
