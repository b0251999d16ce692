use clap::error::ErrorKind;
use clap::Parser;
use symspace::{error_body, run, RunConfig};

fn main() {
    let mut cfg = match RunConfig::try_parse() {
        Ok(cfg) => cfg,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) => {
            let _ = e.print();
            std::process::exit(if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { 2 } else { 0 });
        }
        Err(e) => {
            error_body("config", e.to_string().trim(), None);
            std::process::exit(2);
        }
    };
    // echo the seed actually used
    cfg.common.seed = Some(cfg.seed());
    std::process::exit(run(&cfg));
}
