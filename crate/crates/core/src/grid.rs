use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Log,
    Linear,
}

/// Evaluation abscissae: `count` points from `lo` to `hi` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn new(lo: f64, hi: f64, count: usize, spacing: Spacing) -> Result<Self> {
        let spec = Self { lo, hi, count, spacing };
        spec.validate()?;
        Ok(spec)
    }

    pub fn log(lo: f64, hi: f64, count: usize) -> Result<Self> {
        Self::new(lo, hi, count, Spacing::Log)
    }

    pub fn linear(lo: f64, hi: f64, count: usize) -> Result<Self> {
        Self::new(lo, hi, count, Spacing::Linear)
    }

    /// The `10^-5 ..= 10^5` time window used for the approximant figures.
    pub fn figure_decades(count: usize) -> Self {
        Self {
            lo: 1e-5,
            hi: 1e5,
            count,
            spacing: Spacing::Log,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidGrid(msg.to_string()));
        if !(self.lo.is_finite() && self.hi.is_finite()) {
            return bad("endpoints must be finite");
        }
        if self.lo < 0.0 {
            return bad("lo must be >= 0");
        }
        if self.hi <= self.lo {
            return bad("hi must exceed lo");
        }
        if self.count < 2 {
            return bad("count must be at least 2");
        }
        if self.spacing == Spacing::Log && self.lo <= 0.0 {
            return bad("log spacing requires lo > 0");
        }
        Ok(())
    }

    pub fn points(&self) -> Result<Vec<f64>> {
        make_grid(self)
    }
}

/// Strictly increasing abscissae with exact endpoints.
pub fn make_grid(spec: &GridSpec) -> Result<Vec<f64>> {
    spec.validate()?;
    let n = spec.count;
    let last = (n - 1) as f64;
    let mut pts: Vec<f64> = match spec.spacing {
        Spacing::Linear => {
            let step = (spec.hi - spec.lo) / last;
            (0..n).map(|i| spec.lo + i as f64 * step).collect()
        }
        Spacing::Log => {
            let (a, b) = (spec.lo.log10(), spec.hi.log10());
            (0..n).map(|i| 10f64.powf(a + (b - a) * i as f64 / last)).collect()
        }
    };
    pts[0] = spec.lo;
    pts[n - 1] = spec.hi;
    if pts.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid(
            "points are not strictly increasing at double precision".into(),
        ));
    }
    Ok(pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grids() {
        let g = make_grid(&GridSpec::log(1.0, 100.0, 3).unwrap()).unwrap();
        assert_eq!(g[0], 1.0);
        assert!((g[1] - 10.0).abs() < 1e-14);
        assert_eq!(g[2], 100.0);
        let g = make_grid(&GridSpec::linear(0.0, 2.0, 3).unwrap()).unwrap();
        assert_eq!(g, vec![0.0, 1.0, 2.0]);
    }

    #[test]
    fn figure_decades() {
        let g = make_grid(&GridSpec::figure_decades(11)).unwrap();
        for (k, t) in g.iter().enumerate() {
            let want = 10f64.powi(k as i32 - 5);
            assert!((t / want - 1.0).abs() < 1e-14, "{t} vs {want}");
        }
        assert_eq!(g[0], 1e-5);
        assert_eq!(g[10], 1e5);
    }

    #[test]
    fn invalid_specs() {
        assert!(GridSpec::log(0.0, 1.0, 10).is_err());
        assert!(GridSpec::linear(1.0, 1.0, 10).is_err());
        assert!(GridSpec::linear(0.0, 1.0, 1).is_err());
        assert!(GridSpec::linear(-1.0, 1.0, 4).is_err());
        assert!(GridSpec::linear(0.0, f64::INFINITY, 4).is_err());
        let tight = GridSpec::linear(1.0, 1.0 + 1e-15, 100).unwrap();
        assert!(make_grid(&tight).is_err());
    }
}
