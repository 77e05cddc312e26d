//! `--input` specs: `gaussian:A,b₁,…,b_n,C`, `exponential:A,b₁,…,b_n,C`
//! and `grid:PATH`. Entries are complex literals such as `-0.5`, `1+2i`
//! or `0.3i`.

use std::path::PathBuf;

use num_complex::Complex;
use strichartz_core::gridio::load_grid;
use strichartz_core::{GaussianProfile, GridFunction};

#[derive(Debug, Clone, PartialEq)]
pub enum InputSpec {
    /// e^{A|x|² + b·x + C}.
    Gaussian { a: Complex<f64>, b: Vec<Complex<f64>>, c: Complex<f64> },
    /// e^{A|ω| + b·ω + C} (cone data).
    Exponential { a: Complex<f64>, b: Vec<Complex<f64>>, c: Complex<f64> },
    Grid(PathBuf),
}

pub fn parse_complex(s: &str) -> Result<Complex<f64>, String> {
    let t = s.trim().replace(' ', "");
    t.parse::<Complex<f64>>().map_err(|_| format!("cannot parse complex number {s:?}"))
}

pub fn parse_complex_list(s: &str) -> Result<Vec<Complex<f64>>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_complex).collect()
}

pub fn parse_real_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| format!("cannot parse number {v:?}")))
        .collect()
}

impl InputSpec {
    pub fn parse(s: &str) -> Result<Self, String> {
        let (kind, rest) = s.split_once(':').ok_or_else(|| format!("input {s:?} must look like kind:params"))?;
        match kind {
            "grid" => {
                if rest.is_empty() {
                    return Err("grid input needs a path".into());
                }
                Ok(Self::Grid(PathBuf::from(rest)))
            }
            "gaussian" | "exponential" => {
                let v = parse_complex_list(rest)?;
                if v.len() < 3 {
                    return Err(format!("{kind} input needs A, b (one entry per dimension) and C; got {} values", v.len()));
                }
                let (a, c) = (v[0], v[v.len() - 1]);
                let b = v[1..v.len() - 1].to_vec();
                Ok(if kind == "gaussian" { Self::Gaussian { a, b, c } } else { Self::Exponential { a, b, c } })
            }
            other => Err(format!("unknown input kind {other:?} (expected gaussian, exponential or grid)")),
        }
    }

    /// The standard Gaussian e^{−|x|²/2} in dimension n.
    pub fn standard_gaussian(n: usize) -> Self {
        Self::Gaussian { a: Complex::new(-0.5, 0.0), b: vec![Complex::new(0.0, 0.0); n], c: Complex::new(0.0, 0.0) }
    }

    pub fn dim(&self) -> Option<usize> {
        match self {
            Self::Gaussian { b, .. } | Self::Exponential { b, .. } => Some(b.len()),
            Self::Grid(_) => None,
        }
    }

    pub fn gaussian(&self) -> Result<GaussianProfile, String> {
        match self {
            Self::Gaussian { a, b, c } => GaussianProfile::new(b.len(), *a, b.clone(), *c).map_err(|e| e.to_string()),
            _ => Err("expected a gaussian:A,b,C input".into()),
        }
    }

    pub fn load_grid(&self) -> Result<GridFunction, String> {
        match self {
            Self::Grid(p) => load_grid(p).map_err(|e| format!("{}: {e}", p.display())),
            _ => Err("expected a grid:PATH input".into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_kind() {
        let g = InputSpec::parse("gaussian:-0.5,0,1+2i,0.3i").unwrap();
        assert_eq!(
            g,
            InputSpec::Gaussian {
                a: Complex::new(-0.5, 0.0),
                b: vec![Complex::new(0.0, 0.0), Complex::new(1.0, 2.0)],
                c: Complex::new(0.0, 0.3)
            }
        );
        assert_eq!(g.dim(), Some(2));
        assert!(matches!(InputSpec::parse("exponential:-1,0,0,0,0").unwrap(), InputSpec::Exponential { .. }));
        assert_eq!(InputSpec::parse("grid:/tmp/x.bin").unwrap(), InputSpec::Grid("/tmp/x.bin".into()));
    }

    #[test]
    fn rejects_malformed_specs() {
        for bad in ["gaussian", "gaussian:-0.5,0", "gaussian:a,b,c", "grid:", "sphere:1,2,3"] {
            assert!(InputSpec::parse(bad).is_err(), "{bad}");
        }
    }
}
