//! Config document to CSV and manifest, then a bit-identical rerun from the manifest.

use geomgate::config::parse_config;
use geomgate::experiments::{manifest, run_experiment, RunOptions};
use geomgate::output::emit_outputs;

const DOCUMENT: &str = r#"{
  "device": {"alpha_MHz": 220, "levels": 2},
  "pulse": {"omega0_MHz": 40},
  "noise": {"kappa_kHz": 0},
  "sweep": {"eps": {"from": -0.1, "to": 0.1, "points": 11}}
}"#;

fn main() -> geomgate::Result<()> {
    let spec = parse_config(DOCUMENT)?;
    println!("resolved experiment: {}", spec.experiment);
    let out = run_experiment(&spec, &RunOptions::default())?;
    let dir = std::env::temp_dir().join("geomgate-config-sweep");
    let (csv, json) = emit_outputs(
        &dir,
        spec.experiment.as_str(),
        &out.to_table(),
        &manifest(&spec, &out)?,
    )?;
    println!("wrote {} and {}", csv.display(), json.display());

    let again = parse_config(&std::fs::read_to_string(&json)?)?;
    let rerun = run_experiment(&again, &RunOptions { workers: 0 })?;
    assert_eq!(rerun.to_table().to_csv(), std::fs::read_to_string(&csv)?);
    println!("rerun from manifest reproduces the CSV");
    print!("{}", out.to_table().to_csv());
    Ok(())
}
