fn main() {
    std::process::exit(floatgeo::cli::main());
}
