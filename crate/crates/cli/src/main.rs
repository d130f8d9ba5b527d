use clap::Parser;

fn main() {
    let filter = std::env::var("BPR_LOG").unwrap_or_else(|_| "off".into());
    env_logger::Builder::new().parse_filters(&filter).format_timestamp(None).init();
    let cli = bpr_cli::Cli::parse();
    let code = bpr_cli::run(cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
