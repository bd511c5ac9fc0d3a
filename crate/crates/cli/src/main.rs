fn main() {
    std::process::exit(leo_vn_cli::run(std::env::args_os()));
}
