use crate::qcore::state::PureState;

/// Which projective question the detector asks at every measurement attempt.
///
/// Scheme 1 measures the state orthogonal to the initial one (a transition
/// has to happen before anything can be detected).  Scheme 2 measures the
/// initial state itself, i.e. asks when the system is first *found back*
/// where it started.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DetectionScheme {
    Scheme1,
    Scheme2,
}

impl DetectionScheme {
    /// The state whose detection ends the protocol.
    pub fn detected_state(&self) -> PureState {
        match self {
            DetectionScheme::Scheme1 => PureState::basis_minus(),
            DetectionScheme::Scheme2 => PureState::basis_plus(),
        }
    }

    /// The state a failed measurement collapses the system onto; always
    /// orthogonal to `detected_state`.
    pub fn collapse_state(&self) -> PureState {
        match self {
            DetectionScheme::Scheme1 => PureState::basis_plus(),
            DetectionScheme::Scheme2 => PureState::basis_minus(),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            DetectionScheme::Scheme1 => "scheme1",
            DetectionScheme::Scheme2 => "scheme2",
        }
    }
}
