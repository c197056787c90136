fn main() {
    std::process::exit(thue_morse_dfa::cli::run(std::env::args_os()));
}
