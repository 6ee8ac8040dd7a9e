fn main() {
    std::process::exit(treerumor::cli::run());
}
