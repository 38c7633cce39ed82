fn main() {
    std::process::exit(esakia_forge::cli::run());
}
