fn main() {
    std::process::exit(weylsum::cli::main_with_env());
}
