fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (code, output) = oal_cli::run(&args);
    print!("{output}");
    std::process::exit(code);
}
