use crate::error::{Error, Result};

/// Default number of points used for discrete sup-norms.
pub const DEFAULT_GRID_POINTS: usize = 201;

/// Strictly increasing evaluation abscissae in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    points: Vec<f64>,
}

impl Grid {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::domain("grid must not be empty"));
        }
        if let Some(bad) = points.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(Error::domain(format!("grid point {bad} is outside [0, 1]")));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain("grid points must be strictly increasing"));
        }
        Ok(Self { points })
    }

    /// `count` equally spaced points including both endpoints.
    pub fn uniform(count: usize) -> Result<Self> {
        match count {
            0 => Err(Error::domain("grid must not be empty")),
            1 => Self::new(vec![0.5]),
            _ => {
                let last = (count - 1) as f64;
                Self::new((0..count).map(|i| i as f64 / last).collect())
            }
        }
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

impl Default for Grid {
    fn default() -> Self {
        Self::uniform(DEFAULT_GRID_POINTS).expect("default grid is valid")
    }
}
