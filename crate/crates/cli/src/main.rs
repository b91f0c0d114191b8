use std::io::Read;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let stdin = || {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    };
    let mut out = String::new();
    let mut err = String::new();
    let code = zetacob_cli::run(&args, &stdin, &mut out, &mut err);
    print!("{}", out);
    eprint!("{}", err);
    std::process::exit(code);
}
