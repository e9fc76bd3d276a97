fn main() {
    let (code, out) = tropic_cli::run(std::env::args_os());
    print!("{out}");
    std::process::exit(code);
}
