fn main() {
    env_logger::Builder::new().filter_level(log::LevelFilter::Warn).init();
    std::process::exit(ia_workbench::cli::run_command(std::env::args().collect()));
}
