fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter("LFD_LOG")).format_timestamp(None).init();
    std::process::exit(lfd_cli::run(std::env::args_os()));
}
