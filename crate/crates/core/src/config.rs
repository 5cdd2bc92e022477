//! Parsing of JSON experiment documents into resolved [`ExperimentSpec`]s.
//!
//! A document names its experiment (or lets it be inferred from the sweep
//! axes it declares) and overrides any subset of that experiment's defaults.
//! Parsing is strict: unknown keys, frequencies without a unit suffix and
//! ill-typed values are all reported as [`Error::Config`] naming the key.
//! Frequencies given in another unit (`_GHz`, `_kHz`, `_Hz`) are converted
//! to the canonical one. A run manifest is accepted as well; its embedded
//! `config` entry is parsed instead.

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::experiments::spec::{
    DeviceConfig, ErrorsConfig, IntegratorConfig, NoiseConfig, OutputConfig, PulseConfig,
    SweepConfig,
};
use crate::experiments::{ExperimentId, ExperimentSpec};

const SECTIONS: [&str; 7] = [
    "device",
    "pulse",
    "noise",
    "errors",
    "sweep",
    "output",
    "integrator",
];

const DEVICE_KEYS: &[&str] = &[
    "levels",
    "alpha_MHz",
    "alphaA_MHz",
    "alphaB_MHz",
    "alphaC_MHz",
    "alphaD_MHz",
    "g_MHz",
    "detuning_MHz",
    "beta",
    "model",
];
const PULSE_KEYS: &[&str] = &[
    "omega0_MHz",
    "omega0_not_MHz",
    "omega0_hadamard_MHz",
    "drag",
    "shape",
    "gate",
    "xi",
];
const NOISE_KEYS: &[&str] = &["kappa_kHz"];
const ERRORS_KEYS: &[&str] = &["drift_MHz", "eps", "eta"];
const SWEEP_KEYS: &[&str] = &[
    "omega0_MHz",
    "alpha_MHz",
    "alphaA_MHz",
    "alphaB_MHz",
    "drift_frac",
    "drift_MHz",
    "eps",
    "eta",
    "kappa_kHz",
    "samples",
    "grid",
];
const OUTPUT_KEYS: &[&str] = &["record_stride"];
const INTEGRATOR_KEYS: &[&str] = &["dt_ps"];
const AXIS_KEYS: &[&str] = &["from", "to", "points"];

fn section_keys(section: &str) -> &'static [&'static str] {
    match section {
        "device" => DEVICE_KEYS,
        "pulse" => PULSE_KEYS,
        "noise" => NOISE_KEYS,
        "errors" => ERRORS_KEYS,
        "sweep" => SWEEP_KEYS,
        "output" => OUTPUT_KEYS,
        _ => INTEGRATOR_KEYS,
    }
}

/// Unit families with each unit's size relative to the first entry's base.
const FREQUENCY_UNITS: &[(&str, f64)] = &[("GHz", 1e9), ("MHz", 1e6), ("kHz", 1e3), ("Hz", 1.0)];
const TIME_UNITS: &[(&str, f64)] = &[("us", 1e-6), ("ns", 1e-9), ("ps", 1e-12)];

fn unit_scale(unit: &str) -> Option<(usize, f64)> {
    [FREQUENCY_UNITS, TIME_UNITS]
        .iter()
        .enumerate()
        .find_map(|(family, units)| {
            units
                .iter()
                .find(|(u, _)| *u == unit)
                .map(|&(_, s)| (family, s))
        })
}

fn split_unit(key: &str) -> Option<(&str, &str)> {
    key.rsplit_once('_')
        .filter(|(_, unit)| unit_scale(unit).is_some())
}

fn nearest<'a>(key: &str, candidates: &[&'a str]) -> Option<&'a str> {
    candidates
        .iter()
        .copied()
        .min_by_key(|c| strsim::levenshtein(&key.to_lowercase(), &c.to_lowercase()))
}

fn unknown_key(path: &str, key: &str, candidates: &[&str]) -> Error {
    let hint =
        nearest(key, candidates).map_or(String::new(), |n| format!("; nearest valid key is `{n}`"));
    Error::config(format!(
        "unknown key `{path}{key}`{hint} (valid keys: {})",
        candidates.join(", ")
    ))
}

/// Maps `key` onto a canonical key of `canonical`, returning the factor that
/// converts its value into the canonical unit.
fn resolve_key(path: &str, key: &str, canonical: &[&'static str]) -> Result<(&'static str, f64)> {
    if let Some(&k) = canonical.iter().find(|&&k| k == key) {
        return Ok((k, 1.0));
    }
    if let Some((stem, unit)) = split_unit(key) {
        let (family, scale) = unit_scale(unit).expect("unit checked by split_unit");
        for &k in canonical {
            if let Some((kstem, kunit)) = split_unit(k) {
                let (kfamily, kscale) = unit_scale(kunit).expect("canonical units are known");
                if kstem == stem && kfamily == family {
                    return Ok((k, scale / kscale));
                }
            }
        }
    }
    if let Some(&k) = canonical
        .iter()
        .find(|&&k| split_unit(k).is_some_and(|(stem, _)| stem == key))
    {
        let (_, unit) = split_unit(k).expect("matched above");
        let family = unit_scale(unit).expect("canonical units are known").0;
        let units: Vec<&str> = [FREQUENCY_UNITS, TIME_UNITS][family]
            .iter()
            .map(|(u, _)| *u)
            .collect();
        return Err(Error::config(format!(
            "key `{path}{key}` needs a unit suffix, e.g. `{k}` (accepted units: {})",
            units.join(", ")
        )));
    }
    Err(unknown_key(path, key, canonical))
}

fn scaled(path: &str, value: Value, factor: f64) -> Result<Value> {
    if factor == 1.0 {
        return Ok(value);
    }
    let x = value
        .as_f64()
        .ok_or_else(|| Error::config(format!("`{path}` must be a number, got {value}")))?;
    Ok(Value::from(x * factor))
}

fn as_object(path: &str, value: Value) -> Result<Map<String, Value>> {
    match value {
        Value::Object(m) => Ok(m),
        other => Err(Error::config(format!(
            "`{path}` must be an object, got {other}"
        ))),
    }
}

/// Canonicalises one section: checks keys and converts units.
fn normalise_section(section: &str, body: Value) -> Result<Map<String, Value>> {
    let path = format!("{section}.");
    let mut out = Map::new();
    for (key, value) in as_object(section, body)? {
        let (canon, factor) = resolve_key(&path, &key, section_keys(section))?;
        let full = format!("{path}{canon}");
        let value = if section == "sweep" && !matches!(canon, "samples" | "grid") {
            let mut axis = Map::new();
            for (ak, av) in as_object(&full, value)? {
                if !AXIS_KEYS.contains(&ak.as_str()) {
                    return Err(unknown_key(&format!("{full}."), &ak, AXIS_KEYS));
                }
                let av = if ak == "points" {
                    av
                } else {
                    scaled(&format!("{full}.{ak}"), av, factor)?
                };
                axis.insert(ak, av);
            }
            Value::Object(axis)
        } else {
            scaled(&full, value, factor)?
        };
        if out.insert(canon.to_string(), value).is_some() {
            return Err(Error::config(format!(
                "key `{full}` is given more than once"
            )));
        }
    }
    Ok(out)
}

/// Picks the experiment a document without an `experiment` key describes.
fn infer_experiment(sections: &Map<String, Value>) -> Result<ExperimentId> {
    use ExperimentId::*;
    let has = |section: &str, key: &str| sections.get(section).and_then(|s| s.get(key)).is_some();
    let mut axes: Vec<&str> = SWEEP_KEYS
        .iter()
        .copied()
        .filter(|k| !matches!(*k, "samples" | "grid") && has("sweep", k))
        .collect();
    axes.sort_unstable();
    let id = match axes.as_slice() {
        [] if has("device", "g_MHz") || has("device", "detuning_MHz") => Some(Fig5b),
        [] => Some(
            match sections
                .get("pulse")
                .and_then(|p| p.get("gate"))
                .and_then(Value::as_str)
            {
                Some("hadamard") => Fig2d,
                _ => Fig2b,
            },
        ),
        ["alpha_MHz", "omega0_MHz"] => Some(Fig2a),
        ["omega0_MHz"] => Some(Fig8),
        ["drift_frac"] => Some(Fig3),
        ["eps"] => Some(Fig4a),
        ["drift_MHz"] => Some(Fig5c),
        ["alphaA_MHz", "alphaB_MHz"] => Some(Fig5a),
        _ => None,
    };
    id.ok_or_else(|| {
        Error::config(format!(
            "cannot infer the experiment from sweep axes [{}]; add an `experiment` key",
            axes.join(", ")
        ))
    })
}

fn section_error(section: &str, e: serde_json::Error) -> Error {
    Error::config(format!("section `{section}`: {e}"))
}

/// Parses a configuration document or run manifest.
pub fn parse_config(text: &str) -> Result<ExperimentSpec> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| Error::config(format!("document is not valid JSON: {e}")))?;
    parse_config_value(doc)
}

/// Parses an already decoded configuration document or run manifest.
pub fn parse_config_value(doc: Value) -> Result<ExperimentSpec> {
    let mut doc = as_object("document", doc)?;
    if doc.contains_key("tool") {
        let config = doc
            .remove("config")
            .ok_or_else(|| Error::config("manifest has no `config` entry"))?;
        doc = as_object("config", config)?;
    }

    let mut top: Vec<&str> = vec!["experiment"];
    top.extend(SECTIONS);
    let mut explicit = None;
    let mut sections = Map::new();
    for (key, value) in doc {
        match key.as_str() {
            "experiment" => {
                let name = value.as_str().ok_or_else(|| {
                    Error::config(format!("`experiment` must be a string, got {value}"))
                })?;
                explicit = Some(name.parse::<ExperimentId>()?);
            }
            s if SECTIONS.contains(&s) => {
                let body = normalise_section(s, value)?;
                sections.insert(key, Value::Object(body));
            }
            _ => return Err(unknown_key("", &key, &top)),
        }
    }
    if !sections.contains_key("device") {
        return Err(Error::config("missing required section `device`"));
    }
    let id = match explicit {
        Some(id) => id,
        None => infer_experiment(&sections)?,
    };
    if !id.is_pair() && !sections.contains_key("pulse") {
        return Err(Error::config(format!(
            "missing required section `pulse` for {id}"
        )));
    }

    let mut merged = match serde_json::to_value(ExperimentSpec::defaults(id))? {
        Value::Object(m) => m,
        _ => unreachable!("an experiment serialises to an object"),
    };
    for (section, body) in sections {
        let Value::Object(body) = body else {
            unreachable!("sections are objects")
        };
        let target = merged
            .entry(section)
            .or_insert_with(|| Value::Object(Map::new()))
            .as_object_mut()
            .expect("experiment sections serialise to objects");
        target.extend(body);
    }

    fn take<T: serde::de::DeserializeOwned>(
        m: &mut Map<String, Value>,
        section: &str,
    ) -> Result<T> {
        let v = m
            .remove(section)
            .unwrap_or_else(|| Value::Object(Map::new()));
        serde_json::from_value(v).map_err(|e| section_error(section, e))
    }
    let spec = ExperimentSpec {
        experiment: id,
        device: take::<DeviceConfig>(&mut merged, "device")?,
        pulse: take::<PulseConfig>(&mut merged, "pulse")?,
        noise: take::<NoiseConfig>(&mut merged, "noise")?,
        errors: take::<ErrorsConfig>(&mut merged, "errors")?,
        sweep: take::<SweepConfig>(&mut merged, "sweep")?,
        output: take::<OutputConfig>(&mut merged, "output")?,
        integrator: take::<IntegratorConfig>(&mut merged, "integrator")?,
    };
    spec.validate()?;
    Ok(spec)
}
