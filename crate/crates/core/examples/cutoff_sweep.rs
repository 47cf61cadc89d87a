//! A small cut-off sweep: exact distances on a grid of step counts scaled by log p / H(mu).
//!
//! Run with `cargo run --release --example cutoff_sweep`.

use affine_mix::dist::{cutoff_sweep, ASelection, NGrid, StepLaw, SweepConfig};

fn main() -> affine_mix::Result<()> {
    let mut cfg = SweepConfig::new(StepLaw::parse("0:1/2,1:1/2")?, 20_000, 30_000);
    cfg.prime_sample = Some(3);
    cfg.a = ASelection::Sample(4);
    cfg.grid = NGrid::parse_rules("0.5,1,1.5,2,3:H2:ceil")?;
    cfg.seed = 7;
    let outcome = cutoff_sweep(&cfg)?;
    print!("{}", outcome.to_csv());
    eprintln!("{} rows, {} failed cells", outcome.records.len(), outcome.failures.len());
    Ok(())
}
