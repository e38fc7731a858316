fn main() {
    let (code, report) = digipi::cli_io::run(std::env::args_os());
    if code == 0 {
        print!("{report}");
    } else {
        eprint!("{report}");
    }
    std::process::exit(code);
}
