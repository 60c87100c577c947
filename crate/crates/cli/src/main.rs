use std::io::{Read, Write};

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let mut stdin = String::new();
    if argv.iter().any(|a| a == "--batch") {
        std::io::stdin().read_to_string(&mut stdin).expect("read stdin");
    }
    let out = neretin_cli::run(argv, &stdin);
    std::io::stdout().write_all(out.stdout.as_bytes()).expect("write stdout");
    std::io::stderr().write_all(out.stderr.as_bytes()).expect("write stderr");
    std::process::exit(out.code);
}
