fn main() {
    std::process::exit(monogamy_ising::cli::main_with_args(std::env::args_os()));
}
