//! Named sweeps reproducing the published figure scenarios.

use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
    Fig9,
    Fig10,
    Fig11,
    Fig12,
    Fig13,
    Fig14,
    Fig15,
    Fig16,
}

/// A sweep as `(key, start, stop, step)`.
type Range = (&'static str, f64, f64, f64);

const ETA: Range = ("link.eta_db", 90.0, 160.0, 2.5);
const TIME_SPLIT: Range = ("swipt.rho", 0.05, 0.9, 0.05);
const POWER_SPLIT: Range = ("swipt.epsilon", 0.05, 0.95, 0.05);
const SHARING: Range = ("swipt.mu", 0.05, 0.95, 0.05);

impl Preset {
    pub const ALL: [Preset; 13] = [
        Preset::Fig4,
        Preset::Fig5,
        Preset::Fig6,
        Preset::Fig7,
        Preset::Fig8,
        Preset::Fig9,
        Preset::Fig10,
        Preset::Fig11,
        Preset::Fig12,
        Preset::Fig13,
        Preset::Fig14,
        Preset::Fig15,
        Preset::Fig16,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig4 => "fig4",
            Preset::Fig5 => "fig5",
            Preset::Fig6 => "fig6",
            Preset::Fig7 => "fig7",
            Preset::Fig8 => "fig8",
            Preset::Fig9 => "fig9",
            Preset::Fig10 => "fig10",
            Preset::Fig11 => "fig11",
            Preset::Fig12 => "fig12",
            Preset::Fig13 => "fig13",
            Preset::Fig14 => "fig14",
            Preset::Fig15 => "fig15",
            Preset::Fig16 => "fig16",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Preset::Fig4 => "ground-user outage against satellite SNR scale, fading conditions",
            Preset::Fig5 => "ground-user outage against the harvesting time fraction",
            Preset::Fig6 => "ground-user outage against the power-splitting fraction",
            Preset::Fig7 => "ground-user outage against satellite SNR scale, distance parameters",
            Preset::Fig8 => "ground-user outage against satellite SNR scale, saturation power",
            Preset::Fig9 => "ground-user outage against the sharing factor",
            Preset::Fig10 => "aerial-receiver outage against satellite SNR scale, fading conditions",
            Preset::Fig11 => "aerial-receiver outage against satellite SNR scale, saturation power",
            Preset::Fig12 => "aerial-receiver outage against the harvesting time fraction",
            Preset::Fig13 => "aerial-receiver outage against the sharing factor",
            Preset::Fig14 => "aerial-receiver outage against satellite SNR scale, distance parameters",
            Preset::Fig15 => "system throughput against satellite SNR scale, sharing factor and rate",
            Preset::Fig16 => "system throughput against satellite SNR scale, time fraction",
        }
    }

    fn range(self) -> Range {
        match self {
            Preset::Fig5 | Preset::Fig12 => TIME_SPLIT,
            Preset::Fig6 => POWER_SPLIT,
            Preset::Fig9 | Preset::Fig13 => SHARING,
            _ => ETA,
        }
    }

    pub fn sweep_key(self) -> &'static str {
        self.range().0
    }

    pub fn grid(self) -> Vec<f64> {
        let (_, start, stop, step) = self.range();
        linear_grid(start, stop, step)
    }
}

/// `start, start + step, …` up to `stop` inclusive, each value rounded to
/// 12 significant digits so that accumulated steps print cleanly.
pub fn linear_grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
    (0..n).map(|i| round_significant(start + i as f64 * step, 12)).collect()
}

fn round_significant(x: f64, digits: usize) -> f64 {
    format!("{:.*e}", digits - 1, x).parse().unwrap_or(x)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown figure preset {0:?}; expected one of fig4 .. fig16")]
pub struct UnknownPreset(pub String);

impl FromStr for Preset {
    type Err = UnknownPreset;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim().to_ascii_lowercase();
        let wanted = wanted.strip_suffix("-style").unwrap_or(&wanted);
        Preset::ALL.into_iter().find(|p| p.name() == wanted).ok_or_else(|| UnknownPreset(s.to_string()))
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for p in Preset::ALL {
            assert_eq!(p.name().parse::<Preset>().unwrap(), p);
        }
        assert_eq!("fig5-style".parse::<Preset>().unwrap(), Preset::Fig5);
        assert!("fig3".parse::<Preset>().is_err());
    }

    #[test]
    fn grids_hit_their_endpoints() {
        let rho = Preset::Fig5.grid();
        assert_eq!(rho.len(), 18);
        assert_eq!((rho[0], rho[11], rho[17]), (0.05, 0.6, 0.9));
        let mu = Preset::Fig9.grid();
        assert!(mu.contains(&0.5) && mu.contains(&0.55));
        assert_eq!(Preset::Fig4.grid().len(), 29);
    }
}
