fn main() {
    std::process::exit(modrep_core::cli_main());
}
