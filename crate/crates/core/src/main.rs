fn main() {
    std::process::exit(schubert_fans::cli::run());
}
