use std::io::Write;

fn main() {
    let out = localic_cli::run(std::env::args_os());
    if out.code == 1 {
        eprint!("{}", out.output);
    } else {
        print!("{}", out.output);
        std::io::stdout().flush().ok();
    }
    std::process::exit(out.code);
}
