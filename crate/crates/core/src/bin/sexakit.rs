fn main() {
    std::process::exit(sexakit::cli::main());
}
