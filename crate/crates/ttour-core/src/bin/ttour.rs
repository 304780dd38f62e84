fn main() {
    std::process::exit(ttour_core::cli::cli_main());
}
