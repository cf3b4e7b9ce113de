fn main() {
    std::process::exit(twisted_tensor::cli::run());
}
