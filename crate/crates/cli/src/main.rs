fn main() {
    std::process::exit(elliptic_summer_cli::run());
}
