use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// `min:max:count[:linear|log]`; `count = 1` is the single point `min`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let steps = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                let u = i as f64 / steps;
                if i + 1 == self.count {
                    return self.max;
                }
                match self.spacing {
                    Spacing::Linear => self.min + (self.max - self.min) * u,
                    Spacing::Log => self.min * (self.max / self.min).powf(u),
                }
            })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let parts: Vec<&str> = text.split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(format!("grid `{text}` must look like min:max:count[:linear|log]"));
        }
        let num = |s: &str, what: &str| s.trim().parse::<f64>().map_err(|_| format!("grid {what} `{s}` is not a number"));
        let min = num(parts[0], "min")?;
        let max = num(parts[1], "max")?;
        let count: usize = parts[2].trim().parse().map_err(|_| format!("grid count `{}` is not a positive integer", parts[2]))?;
        let spacing = match parts.get(3).map(|s| s.trim()) {
            None | Some("linear") => Spacing::Linear,
            Some("log") => Spacing::Log,
            Some(other) => return Err(format!("grid spacing `{other}` must be linear or log")),
        };
        if count == 0 {
            return Err("grid count must be at least 1".into());
        }
        if !(min.is_finite() && max.is_finite()) || min < 0.0 || max < min {
            return Err(format!("grid bounds need 0 ≤ min ≤ max, got {min}:{max}"));
        }
        if spacing == Spacing::Log && min <= 0.0 {
            return Err("log spacing needs min > 0".into());
        }
        Ok(Grid { min, max, count, spacing })
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spacing = match self.spacing {
            Spacing::Linear => "linear",
            Spacing::Log => "log",
        };
        write!(f, "{}:{}:{}:{spacing}", self.min, self.max, self.count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_and_log() {
        let g: Grid = "0.5:2:4:linear".parse().unwrap();
        assert_eq!(g.points(), vec![0.5, 1.0, 1.5, 2.0]);
        let g: Grid = "1:100:3:log".parse().unwrap();
        let p = g.points();
        assert_eq!(p[0], 1.0);
        assert!((p[1] - 10.0).abs() < 1e-13);
        assert_eq!(p[2], 100.0);
    }

    #[test]
    fn single_point_is_min() {
        let g: Grid = "2.5:2.5:1".parse().unwrap();
        assert_eq!(g.points(), vec![2.5]);
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["1:2", "1:2:0", "2:1:3", "0:1:3:log", "a:1:2", "1:2:3:cubic", "-1:1:2"] {
            assert!(bad.parse::<Grid>().is_err(), "{bad}");
        }
    }
}
