/// Closed-form summary of a first-detection-time distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstDetectionStats {
    /// Mean first-detection time.
    pub mean: f64,
    /// Second moment `<t^2>`.
    pub second_moment: f64,
    /// Variance `<t^2> - <t>^2`.
    pub variance: f64,
    /// Exponential decay time of the density tail (slowest relaxation mode).
    pub decay_time: f64,
    /// Leading small-time coefficient: the density behaves like
    /// `c * t^2` (scheme 1) or approaches the constant `c` (scheme 2).
    pub small_t_coefficient: f64,
}
