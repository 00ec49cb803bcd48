use std::net::SocketAddr;
use std::process::ExitCode;

use clap::Parser;
use quiverlab_cli::cli::{Cli, Command, Format};
use quiverlab_cli::service::{self, Config};
use quiverlab_cli::{run, structured};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Serve { port, host } = &cli.command {
        let addr: SocketAddr = match format!("{host}:{port}").parse() {
            Ok(a) => a,
            Err(e) => {
                eprintln!("error: bad address {host}:{port}: {e}");
                return ExitCode::from(2);
            }
        };
        let rt = tokio::runtime::Runtime::new().expect("tokio runtime");
        eprintln!("listening on http://{addr}");
        return match rt.block_on(service::serve(addr, Config::from_env())) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        };
    }
    match run(&cli) {
        Ok(report) => {
            println!("{}", report.render(cli.format));
            ExitCode::from(report.code)
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Structured => println!("{}", structured(&serde_json::json!({ "error": e.to_string() }))),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
