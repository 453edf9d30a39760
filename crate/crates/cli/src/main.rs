fn main() {
    std::process::exit(flgame_cli::app::run(std::env::args_os()));
}
