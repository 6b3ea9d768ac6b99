use thiserror::Error;

#[derive(Debug, Error)]
pub enum EnvError {
    #[error("unknown environment '{0}'")]
    UnknownEnvironment(String),

    #[error("invalid environment config: {0}")]
    InvalidConfig(String),

    #[error("unknown action name '{0}'")]
    UnknownAction(String),

    #[error("enumeration would expand {0} outcome paths (limit 1e6)")]
    EnumerationTooLarge(f64),

    #[error("config file error: {0}")]
    Io(#[from] std::io::Error),

    #[error("config parse error: {0}")]
    Parse(String),
}
