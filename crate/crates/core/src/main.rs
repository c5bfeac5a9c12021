fn main() {
    std::process::exit(clonoids::cli::run());
}
