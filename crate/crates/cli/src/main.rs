use std::io::Read;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let mut read_stdin = || {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    };
    let outcome = sumrank_cli::run(&args, &mut read_stdin);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    std::process::exit(outcome.code);
}
