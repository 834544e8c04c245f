use clap::Parser;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    std::process::exit(emolit_service::cli::run(emolit_service::cli::Cli::parse()));
}
