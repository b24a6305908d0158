fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if let Err(e) = owtm::cli::main_with_args(std::env::args_os(), &mut out) {
        eprintln!("owtm: {e}");
        std::process::exit(e.exit_code());
    }
}
