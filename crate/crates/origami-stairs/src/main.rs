fn main() {
    std::process::exit(origami_stairs::cli::run(std::env::args()));
}
