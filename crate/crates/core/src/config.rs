/// Operation budgets for the exponential-time parts of the crate.
///
/// `oracle` bounds the number of elementary map-product operations of the brute-force
/// enumerators; `taylor` bounds the number of (edge subset, partial map) pairs visited
/// when computing derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorkBudget {
    pub oracle: f64,
    pub taylor: f64,
}

pub const DEFAULT_ORACLE_CAP: f64 = 1e8;
pub const DEFAULT_TAYLOR_CAP: f64 = 1e9;

/// Environment variable overriding both budgets.
pub const WORK_CAP_ENV: &str = "PFGM_WORK_CAP";

impl Default for WorkBudget {
    fn default() -> Self {
        WorkBudget { oracle: DEFAULT_ORACLE_CAP, taylor: DEFAULT_TAYLOR_CAP }
    }
}

impl WorkBudget {
    pub fn uniform(cap: f64) -> Self {
        WorkBudget { oracle: cap, taylor: cap }
    }

    /// Reads [`WORK_CAP_ENV`]; falls back to the defaults when unset.
    pub fn from_env() -> Result<Self, String> {
        match std::env::var(WORK_CAP_ENV) {
            Ok(raw) => {
                let cap: f64 = raw
                    .trim()
                    .parse()
                    .map_err(|_| format!("{WORK_CAP_ENV}: cannot parse {raw:?} as a number"))?;
                if !(cap > 0.0) {
                    return Err(format!("{WORK_CAP_ENV}: budget must be positive, got {raw}"));
                }
                Ok(Self::uniform(cap))
            }
            Err(_) => Ok(Self::default()),
        }
    }
}
