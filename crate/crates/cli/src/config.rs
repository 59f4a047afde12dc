//! Flat `key = value` configuration. `#` starts a comment; absent keys take
//! their defaults, so an empty file is a complete configuration.

use crate::preset::{linear_grid, Preset};
use sagin_mc::EstimateMethod;
use sagin_model::{
    db_to_linear, dbm_to_watts, gamma_from_rate, ConeGeometry, IcMode, ModelError, Nakagami, NoiseParams, OrbitGeometry,
    Rician, SatelliteLink, Scenario, ShadowedRician, SwiptParams,
};
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("line {line}: expected `key = value`, found {text:?}")]
    Syntax { line: usize, text: String },
    #[error("line {line}: {key} is set more than once")]
    Duplicate { line: usize, key: String },
    #[error("line {line}: unknown key {key}")]
    UnknownKey { line: usize, key: String },
    #[error("{key}: cannot read {value:?} as {expected}")]
    BadValue { key: String, value: String, expected: &'static str },
    #[error("{key} = {value}: {requirement}")]
    OutOfRange { key: String, value: String, requirement: String },
    #[error("{key}: {reason}")]
    Invalid { key: String, reason: String },
}

impl ConfigError {
    /// The configuration key at fault, if the error concerns one.
    pub fn key(&self) -> Option<&str> {
        match self {
            ConfigError::Io { .. } | ConfigError::Syntax { .. } => None,
            ConfigError::Duplicate { key, .. }
            | ConfigError::UnknownKey { key, .. }
            | ConfigError::BadValue { key, .. }
            | ConfigError::OutOfRange { key, .. }
            | ConfigError::Invalid { key, .. } => Some(key),
        }
    }
}

type Result<T> = std::result::Result<T, ConfigError>;

/// Numeric keys and their defaults; `None` marks keys that are unset unless
/// given.
const NUMERIC: &[(&str, Option<f64>)] = &[
    ("orbit.earth_radius_km", Some(6371.0)),
    ("orbit.min_distance_km", Some(400.0)),
    ("relay.altitude_m", Some(800.0)),
    ("ground.radius_m", Some(250.0)),
    ("cone.near_m", Some(400.0)),
    ("cone.far_m", Some(500.0)),
    ("cone.half_angle_deg", Some(15.0)),
    ("cone.far_radius_m", None),
    ("satellite.m", Some(2.0)),
    ("satellite.b", Some(0.063)),
    ("satellite.omega", Some(0.0005)),
    ("gu.m", Some(2.0)),
    ("gu.nu", Some(2.0)),
    ("arx.k", Some(1.0)),
    ("arx.nu", Some(2.0)),
    ("link.eta_db", None),
    ("link.tx_power_w", None),
    ("link.rain_db", Some(2.0)),
    ("link.wavelength_m", Some(0.15)),
    ("link.noise_temp_k", Some(300.0)),
    ("link.bandwidth_hz", Some(15e6)),
    ("link.sat_gain_db", Some(53.45)),
    ("link.relay_gain_db", Some(4.8)),
    ("link.offset_deg", Some(0.8)),
    ("link.beamwidth_deg", Some(0.3)),
    ("swipt.chi", Some(0.6)),
    ("swipt.rho", Some(0.4)),
    ("swipt.epsilon", Some(0.4)),
    ("swipt.mu", Some(0.7)),
    ("swipt.p_th_dbm", Some(10.0)),
    ("swipt.block_s", Some(1.0)),
    ("noise.relay_dbm", Some(-50.0)),
    ("noise.baseband_dbm", Some(-50.0)),
    ("noise.gu_dbm", Some(-50.0)),
    ("noise.arx_dbm", Some(-50.0)),
    ("rate.s", Some(0.1)),
    ("rate.a", Some(0.1)),
    ("threshold.s_db", None),
    ("threshold.a_db", None),
];

const TEXT: &[&str] = &[
    "a2a.ic",
    "run.methods",
    "run.trials",
    "run.seed",
    "sweep.variable",
    "sweep.values",
    "sweep.start",
    "sweep.stop",
    "sweep.step",
];

/// Satellite SNR scale used when neither `link.eta_db` nor a link budget is given.
pub const DEFAULT_ETA_DB: f64 = 120.0;
pub const DEFAULT_TRIALS: u64 = 1_000_000;
pub const DEFAULT_SEED: u64 = 1;
const DEFAULT_SWEEP: (&str, f64, f64, f64) = ("link.eta_db", 90.0, 150.0, 5.0);
const MAX_GRID: usize = 100_000;

/// Model parameter names mapped back to the keys that set them.
const MODEL_KEYS: &[(&str, &str)] = &[
    ("earth_radius", "orbit.earth_radius_km"),
    ("min_distance", "orbit.min_distance_km"),
    ("relay_altitude", "relay.altitude_m"),
    ("altitude", "relay.altitude_m"),
    ("disc_radius", "ground.radius_m"),
    ("near", "cone.near_m"),
    ("far", "cone.far_m"),
    ("half_angle", "cone.half_angle_deg"),
    ("m_sr", "satellite.m"),
    ("b_sr", "satellite.b"),
    ("omega_sr", "satellite.omega"),
    ("m_rd", "gu.m"),
    ("nu_rd", "gu.nu"),
    ("k_rt", "arx.k"),
    ("nu_rt", "arx.nu"),
    ("eta_s", "link.eta_db"),
    ("tx_power", "link.tx_power_w"),
    ("wavelength", "link.wavelength_m"),
    ("noise_temperature", "link.noise_temp_k"),
    ("bandwidth", "link.bandwidth_hz"),
    ("offset", "link.offset_deg"),
    ("beamwidth_3db", "link.beamwidth_deg"),
    ("swipt.p_th", "swipt.p_th_dbm"),
    ("swipt.block", "swipt.block_s"),
    ("noise.relay", "noise.relay_dbm"),
    ("noise.baseband", "noise.baseband_dbm"),
    ("noise.gu", "noise.gu_dbm"),
    ("noise.arx", "noise.arx_dbm"),
    ("gamma_s", "threshold.s_db"),
    ("gamma_a", "threshold.a_db"),
];

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub key: &'static str,
    pub grid: Vec<f64>,
}

/// One grid point ready for evaluation. The rates are those credited in the
/// throughput; with a direct threshold they follow from it.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub scenario: Scenario,
    pub rate_s: f64,
    pub rate_a: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    values: BTreeMap<&'static str, f64>,
    pub ic_mode: IcMode,
    /// Requested methods in the fixed order closed, integral, Monte Carlo.
    pub methods: Vec<EstimateMethod>,
    pub trials: u64,
    pub seed: u64,
    pub sweep: Sweep,
    pub preset: Option<Preset>,
    pub warnings: Vec<String>,
}

impl ScenarioConfig {
    /// The configured value of a numeric key, before any sweep override.
    pub fn get(&self, key: &str) -> Option<f64> {
        self.values.get(key).copied()
    }

    pub fn has_method(&self, method: EstimateMethod) -> bool {
        self.methods.contains(&method)
    }

    /// The configuration with the sweep variable set to `x`.
    pub fn point(&self, x: f64) -> Result<Point> {
        let mut values = self.values.clone();
        values.insert(self.sweep.key, x);
        build_point(&values, self.has_method(EstimateMethod::Closed))
    }
}

pub fn load_config(path: &Path, preset: Option<Preset>) -> Result<ScenarioConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError::Io { path: path.display().to_string(), reason: e.to_string() })?;
    parse_config(&text, preset)
}

pub fn parse_config(text: &str, preset: Option<Preset>) -> Result<ScenarioConfig> {
    let entries = read_entries(text)?;
    let mut values: BTreeMap<&'static str, f64> =
        NUMERIC.iter().filter_map(|&(k, d)| d.map(|v| (k, v))).collect();
    let mut text_values: BTreeMap<&'static str, String> = BTreeMap::new();
    for (key, raw) in entries {
        if let Some(&(k, _)) = NUMERIC.iter().find(|(k, _)| *k == key) {
            values.insert(k, parse_real(k, &raw)?);
        } else if let Some(&k) = TEXT.iter().find(|k| **k == key) {
            text_values.insert(k, raw);
        }
    }

    let mut warnings = Vec::new();
    if values.contains_key("cone.far_radius_m") {
        warnings.push("cone.far_radius_m is fixed by cone.far_m and cone.half_angle_deg; the given value is ignored".into());
    }

    let ic_mode = match text_values.get("a2a.ic").map(|s| s.to_ascii_lowercase()).as_deref() {
        None | Some("imperfect") => IcMode::Imperfect,
        Some("perfect") => IcMode::Perfect,
        Some(_) => return Err(bad_value("a2a.ic", &text_values["a2a.ic"], "imperfect or perfect")),
    };
    let methods = match text_values.get("run.methods") {
        None => vec![EstimateMethod::Closed, EstimateMethod::MonteCarlo],
        Some(raw) => parse_methods(raw)?,
    };
    let trials = match text_values.get("run.trials") {
        None => DEFAULT_TRIALS,
        Some(raw) => parse_count("run.trials", raw)?,
    };
    if trials == 0 {
        return Err(out_of_range("run.trials", "0", "must be at least 1"));
    }
    let seed = match text_values.get("run.seed") {
        None => DEFAULT_SEED,
        Some(raw) => parse_count("run.seed", raw)?,
    };

    let sweep = match preset {
        Some(p) => {
            if text_values.keys().any(|k| k.starts_with("sweep.")) {
                warnings.push(format!("figure preset {p} fixes the sweep; sweep.* keys are ignored"));
            }
            Sweep { key: p.sweep_key(), grid: p.grid() }
        }
        None => parse_sweep(&text_values)?,
    };

    let swept_eta = sweep.key == "link.eta_db";
    if (values.contains_key("link.eta_db") || swept_eta) && values.contains_key("link.tx_power_w") {
        warnings.push("link.eta_db is set directly; the link budget keys are ignored".into());
    }

    let cfg = ScenarioConfig { values, ic_mode, methods, trials, seed, sweep, preset, warnings };
    for &x in &cfg.sweep.grid {
        cfg.point(x)?;
    }
    Ok(cfg)
}

/// `(key, value)` pairs in file order after comment stripping.
fn read_entries(text: &str) -> Result<Vec<(String, String)>> {
    let mut seen = BTreeMap::new();
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .filter(|(k, _)| !k.is_empty())
            .ok_or_else(|| ConfigError::Syntax { line: line_no, text: raw.trim().to_string() })?;
        if !NUMERIC.iter().any(|(k, _)| *k == key) && !TEXT.contains(&key) {
            return Err(ConfigError::UnknownKey { line: line_no, key: key.to_string() });
        }
        if seen.insert(key.to_string(), line_no).is_some() {
            return Err(ConfigError::Duplicate { line: line_no, key: key.to_string() });
        }
        out.push((key.to_string(), value.to_string()));
    }
    Ok(out)
}

fn bad_value(key: &str, value: &str, expected: &'static str) -> ConfigError {
    ConfigError::BadValue { key: key.to_string(), value: value.to_string(), expected }
}

fn out_of_range(key: &str, value: &str, requirement: &str) -> ConfigError {
    ConfigError::OutOfRange { key: key.to_string(), value: value.to_string(), requirement: requirement.to_string() }
}

fn invalid(key: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Invalid { key: key.to_string(), reason: reason.into() }
}

fn parse_real(key: &str, raw: &str) -> Result<f64> {
    let v: f64 = raw.parse().map_err(|_| bad_value(key, raw, "a number"))?;
    if v.is_nan() {
        return Err(bad_value(key, raw, "a number"));
    }
    Ok(v)
}

fn parse_count(key: &str, raw: &str) -> Result<u64> {
    raw.replace('_', "").parse().map_err(|_| bad_value(key, raw, "a non-negative integer"))
}

fn parse_methods(raw: &str) -> Result<Vec<EstimateMethod>> {
    let mut wanted = Vec::new();
    for name in raw.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let m = match name.to_ascii_lowercase().as_str() {
            "closed" => EstimateMethod::Closed,
            "integral" => EstimateMethod::Integral,
            "mc" | "monte_carlo" => EstimateMethod::MonteCarlo,
            _ => return Err(bad_value("run.methods", name, "closed, integral or mc")),
        };
        wanted.push(m);
    }
    let methods: Vec<_> = [EstimateMethod::Closed, EstimateMethod::Integral, EstimateMethod::MonteCarlo]
        .into_iter()
        .filter(|m| wanted.contains(m))
        .collect();
    if methods.is_empty() {
        return Err(invalid("run.methods", "names no method"));
    }
    Ok(methods)
}

fn parse_sweep(text: &BTreeMap<&'static str, String>) -> Result<Sweep> {
    let given = |k: &str| text.get(k).map(String::as_str);
    let range_keys = ["sweep.start", "sweep.stop", "sweep.step"];
    let any_range = range_keys.iter().any(|k| text.contains_key(k));
    let Some(variable) = given("sweep.variable") else {
        if any_range || text.contains_key("sweep.values") {
            return Err(invalid("sweep.variable", "missing; a sweep needs a variable"));
        }
        let (key, start, stop, step) = DEFAULT_SWEEP;
        return Ok(Sweep { key, grid: linear_grid(start, stop, step) });
    };
    let key = NUMERIC
        .iter()
        .map(|&(k, _)| k)
        .find(|&k| k == variable && k != "cone.far_radius_m")
        .ok_or_else(|| bad_value("sweep.variable", variable, "a numeric parameter key"))?;

    let grid = match given("sweep.values") {
        Some(list) => {
            if any_range {
                return Err(invalid("sweep.values", "cannot be combined with sweep.start, sweep.stop or sweep.step"));
            }
            list.split(',').map(|s| parse_real("sweep.values", s.trim())).collect::<Result<Vec<_>>>()?
        }
        None => {
            let mut bounds = [0.0; 3];
            for (slot, k) in bounds.iter_mut().zip(range_keys) {
                let raw = given(k).ok_or_else(|| {
                    invalid(k, "missing; a range sweep needs sweep.start, sweep.stop and sweep.step (or sweep.values)")
                })?;
                *slot = parse_real(k, raw)?;
            }
            let [start, stop, step] = bounds;
            if !(step > 0.0) || !step.is_finite() {
                return Err(out_of_range("sweep.step", given("sweep.step").unwrap_or_default(), "must be positive"));
            }
            if !(stop >= start) || !start.is_finite() || !stop.is_finite() {
                return Err(out_of_range("sweep.stop", given("sweep.stop").unwrap_or_default(), "must not be below sweep.start"));
            }
            if (stop - start) / step >= MAX_GRID as f64 {
                return Err(invalid("sweep.step", format!("grid would exceed {MAX_GRID} points")));
            }
            linear_grid(start, stop, step)
        }
    };
    if grid.is_empty() {
        return Err(invalid("sweep.values", "empty grid"));
    }
    Ok(Sweep { key, grid })
}

fn model_error(e: ModelError, values: &BTreeMap<&'static str, f64>) -> ConfigError {
    let name = match &e {
        ModelError::InvalidParameter { name, .. } | ModelError::NonIntegerSeverity { name, .. } => *name,
        ModelError::Special(s) => return invalid("link", s.to_string()),
    };
    let key = MODEL_KEYS.iter().find(|(n, _)| *n == name).map_or(name, |&(_, k)| k);
    let shown = |fallback: f64| values.get(key).copied().unwrap_or(fallback).to_string();
    match e {
        ModelError::InvalidParameter { value, requirement, .. } => out_of_range(key, &shown(value), requirement),
        ModelError::NonIntegerSeverity { value, .. } => out_of_range(
            key,
            &shown(value),
            "the closed-form method needs an integer fading severity; use run.methods = integral, mc",
        ),
        ModelError::Special(_) => unreachable!(),
    }
}

fn build_point(v: &BTreeMap<&'static str, f64>, closed: bool) -> Result<Point> {
    let g = |k: &str| v[k];
    let m = |e: ModelError| model_error(e, v);

    for key in ["link.eta_db", "swipt.p_th_dbm", "noise.relay_dbm", "noise.baseband_dbm", "noise.gu_dbm", "noise.arx_dbm"] {
        if let Some(&x) = v.get(key) {
            let ok = x.is_finite() || (key == "swipt.p_th_dbm" && x == f64::INFINITY);
            if !ok {
                return Err(out_of_range(key, &x.to_string(), "must be finite"));
            }
        }
    }
    let orbit = OrbitGeometry::new(
        g("orbit.earth_radius_km") * 1e3,
        g("relay.altitude_m"),
        g("orbit.min_distance_km") * 1e3,
    )
    .map_err(m)?;
    let cone = ConeGeometry::new(
        g("relay.altitude_m"),
        g("ground.radius_m"),
        g("cone.near_m"),
        g("cone.far_m"),
        g("cone.half_angle_deg").to_radians(),
    )
    .map_err(m)?;
    let satellite = ShadowedRician::new(g("satellite.m"), g("satellite.b"), g("satellite.omega")).map_err(m)?;
    let gu = Nakagami::new(g("gu.m"), g("gu.nu")).map_err(m)?;
    let arx = Rician::new(g("arx.k"), g("arx.nu")).map_err(m)?;

    let eta_s = match (v.get("link.eta_db"), v.get("link.tx_power_w")) {
        (Some(&db), _) => db_to_linear(db),
        (None, Some(&power)) => SatelliteLink {
            tx_power_w: power,
            rain_db: g("link.rain_db"),
            wavelength_m: g("link.wavelength_m"),
            noise_temp_k: g("link.noise_temp_k"),
            bandwidth_hz: g("link.bandwidth_hz"),
            sat_gain_db: g("link.sat_gain_db"),
            relay_gain_db: g("link.relay_gain_db"),
            offset_rad: g("link.offset_deg").to_radians(),
            beamwidth_rad: g("link.beamwidth_deg").to_radians(),
        }
        .effective_gain()
        .map_err(m)?,
        (None, None) => db_to_linear(DEFAULT_ETA_DB),
    };

    let swipt = SwiptParams {
        efficiency: g("swipt.chi"),
        time_split: g("swipt.rho"),
        power_split: g("swipt.epsilon"),
        sharing: g("swipt.mu"),
        saturation_w: dbm_to_watts(g("swipt.p_th_dbm")),
        block_s: g("swipt.block_s"),
    };
    swipt.validate().map_err(m)?;
    let noise = NoiseParams::from_dbm(
        g("noise.relay_dbm"),
        g("noise.baseband_dbm"),
        g("noise.gu_dbm"),
        g("noise.arx_dbm"),
    );

    let rho = swipt.time_split;
    let threshold = |rate_key: &str, db_key: &str| -> Result<(f64, f64)> {
        let rate = g(rate_key);
        if !(rate >= 0.0 && rate.is_finite()) {
            return Err(out_of_range(rate_key, &rate.to_string(), "must be non-negative"));
        }
        match v.get(db_key) {
            Some(&db) if db.is_finite() => {
                let gamma = db_to_linear(db);
                Ok((gamma, (1.0 - rho) / 2.0 * (1.0 + gamma).log2()))
            }
            Some(&db) => Err(out_of_range(db_key, &db.to_string(), "must be finite")),
            None => Ok((gamma_from_rate(rate, rho).map_err(m)?, rate)),
        }
    };
    let (gamma_s, rate_s) = threshold("rate.s", "threshold.s_db")?;
    let (gamma_a, rate_a) = threshold("rate.a", "threshold.a_db")?;

    let scenario = Scenario { orbit, cone, satellite, gu, arx, eta_s, swipt, noise, gamma_s, gamma_a };
    scenario.validate().map_err(m)?;
    if closed {
        scenario.satellite.integer_severity().map_err(m)?;
        if gu.severity.fract() != 0.0 {
            return Err(model_error(ModelError::NonIntegerSeverity { name: "m_rd", value: gu.severity }, v));
        }
    }
    Ok(Point { scenario, rate_s, rate_a })
}
