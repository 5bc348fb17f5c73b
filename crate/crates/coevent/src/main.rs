fn main() {
    std::process::exit(coevent::cli::run());
}
