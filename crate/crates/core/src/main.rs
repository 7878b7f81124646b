fn main() {
    coalloc::cli::configure_threads();
    let code = coalloc::cli::run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
