fn main() {
    std::process::exit(k3dyn::cli::run());
}
