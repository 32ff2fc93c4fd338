fn main() {
    std::process::exit(qaoa_fipso::cli::main());
}
