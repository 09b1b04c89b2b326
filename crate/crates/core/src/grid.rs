//! Inclusive 1-D grids written `start:stop:count`.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// `count` points from `start` to `stop`, both included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridSpec {
    /// Needs `start < stop`, or `start = stop` with a single point.
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self> {
        if !(start.is_finite() && stop.is_finite()) {
            return Err(invalid("grid endpoints must be finite"));
        }
        match count {
            0 => Err(invalid("grid needs at least 1 point")),
            1 if start != stop => Err(invalid(format!("a single-point grid needs start = stop, got {start}:{stop}"))),
            1 => Ok(GridSpec { start, stop, count }),
            _ if !(start < stop) => Err(invalid(format!("grid needs start < stop, got {start}:{stop}"))),
            _ => Ok(GridSpec { start, stop, count }),
        }
    }

    pub fn step(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        (self.stop - self.start) / (self.count - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        if self.count < 2 {
            return self.start;
        }
        if i == 0 {
            return self.start;
        }
        if i + 1 >= self.count {
            return self.stop;
        }
        // ((n − i) a + i b)/n keeps symmetric grids symmetric
        let n = (self.count - 1) as f64;
        let i = i as f64;
        ((n - i) * self.start + i * self.stop) / n
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.point(i)).collect()
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts.as_slice() else {
            return Err(invalid(format!("grid '{s}' is not of the form start:stop:count")));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| invalid(format!("bad grid number '{t}'")));
        let count = n.trim().parse::<usize>().map_err(|_| invalid(format!("bad grid count '{n}'")))?;
        GridSpec::new(num(a)?, num(b)?, count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing_and_points() {
        let g: GridSpec = "-3:3:121".parse().unwrap();
        assert_eq!(g.count, 121);
        assert_eq!(g.point(0), -3.0);
        assert_eq!(g.point(60), 0.0);
        assert_eq!(g.point(120), 3.0);
        assert_eq!(g.point(59), -0.05);
        assert!((g.step() - 0.05).abs() < 1e-15);
        assert_eq!("2:2:1".parse::<GridSpec>().unwrap().points(), vec![2.0]);
        for bad in ["1:0:5", "0:1:0", "0:1:1", "0:1", "a:1:3", "0:inf:3"] {
            assert!(bad.parse::<GridSpec>().is_err(), "{bad}");
        }
    }
}
