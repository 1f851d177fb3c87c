use crate::error::SingularReason;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Complete,
    /// `values[index]` could not be computed.
    Truncated { index: usize, reason: SingularReason },
}

/// Solution values `z_0, z_1, …` of an order-`k` model, indexed globally.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    order: usize,
    horizon: usize,
    values: Vec<T>,
    status: Status,
}

impl<T> Trajectory<T> {
    pub(crate) fn new(order: usize, horizon: usize, values: Vec<T>, status: Status) -> Self {
        Trajectory {
            order,
            horizon,
            values,
            status,
        }
    }

    /// Builds a trajectory from raw values, e.g. ones read back from disk.
    pub fn from_values(order: usize, values: Vec<T>) -> Self {
        let horizon = values.len();
        Trajectory::new(order, horizon, values, Status::Complete)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of terms that were requested.
    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// The defined prefix.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: usize) -> Option<&T> {
        self.values.get(n)
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == Status::Complete
    }

    pub fn truncated_at(&self) -> Option<usize> {
        match self.status {
            Status::Complete => None,
            Status::Truncated { index, .. } => Some(index),
        }
    }

    /// `(n, z_n)` for the strand `n ≡ j (mod k)`.
    pub fn strand(&self, j: usize) -> impl Iterator<Item = (usize, &T)> + '_ {
        self.values
            .iter()
            .enumerate()
            .skip(j)
            .step_by(self.order.max(1))
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }
}
