use super::{stage_state, HardyConfig, Stage, NO_PHOTON, PHOTON_PAIR, VACUUM, X, Y};
use crate::error::Result;

/// Click statistics at the final detectors. X± fires on `|x⟩±`, Y± on
/// `|y⟩±`; with the interferometers isolated X+ and Y− stay dark.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionDistribution {
    pub x_plus_x_minus: f64,
    pub x_plus_y_minus: f64,
    pub y_plus_x_minus: f64,
    pub y_plus_y_minus: f64,
    pub annihilation: f64,
}

impl DetectionDistribution {
    /// Both dark detectors (X+, Y−) click.
    pub fn both_dark(&self) -> f64 {
        self.x_plus_y_minus
    }

    /// At least one of X+, Y− clicks.
    pub fn at_least_one_dark(&self) -> f64 {
        self.x_plus_x_minus + self.x_plus_y_minus + self.y_plus_y_minus
    }

    /// `[(X+,X−), (X+,Y−), (Y+,X−), (Y+,Y−), annihilation]`.
    pub fn as_array(&self) -> [f64; 5] {
        [
            self.x_plus_x_minus,
            self.x_plus_y_minus,
            self.y_plus_x_minus,
            self.y_plus_y_minus,
            self.annihilation,
        ]
    }

    pub fn total(&self) -> f64 {
        self.as_array().iter().sum()
    }
}

pub fn detection_distribution(config: &HardyConfig) -> Result<DetectionDistribution> {
    let psi = stage_state(Stage::Four, config)?;
    let space = psi.space();
    let amps = psi.amplitudes();
    let prob = |digits: [usize; 3]| amps[space.join_index(&digits)].norm_sqr();
    Ok(DetectionDistribution {
        x_plus_x_minus: prob([X, X, NO_PHOTON]),
        x_plus_y_minus: prob([X, Y, NO_PHOTON]),
        y_plus_x_minus: prob([Y, X, NO_PHOTON]),
        y_plus_y_minus: prob([Y, Y, NO_PHOTON]),
        annihilation: prob([VACUUM, VACUUM, PHOTON_PAIR]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardy::dark_probability;

    #[test]
    fn hardy_setting_statistics() {
        let d = detection_distribution(&HardyConfig::with_p(1.0).unwrap()).unwrap();
        let expect = [1.0, 1.0, 9.0, 1.0, 4.0].map(|x| x / 16.0);
        for (a, b) in d.as_array().iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!((d.at_least_one_dark() - 3.0 / 16.0).abs() < 1e-12);
    }

    #[test]
    fn isolated_interferometers() {
        let d = detection_distribution(&HardyConfig::with_p(0.0).unwrap()).unwrap();
        let expect = [0.0, 0.0, 1.0, 0.0, 0.0];
        for (a, b) in d.as_array().iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn dark_probability_matches_amplitudes() {
        for &p in &[0.25, 0.5, 0.75, 0.37] {
            let d = detection_distribution(&HardyConfig::new(p, 0.9).unwrap()).unwrap();
            assert!((d.both_dark() - dark_probability(p)).abs() < 1e-12);
            assert!((d.annihilation - p / 4.0).abs() < 1e-12);
            assert!((d.total() - 1.0).abs() < 1e-10);
        }
    }
}
