fn main() {
    std::process::exit(slepian_cli::run(std::env::args_os()));
}
