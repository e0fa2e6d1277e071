use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    /// A computed object contradicts a statement the pipeline relies on.
    #[error("{stage}: {rule} failed: {detail}")]
    Inconsistent { stage: String, rule: String, detail: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl AnalysisError {
    pub fn inconsistent(stage: &str, rule: &str, detail: impl Into<String>) -> AnalysisError {
        AnalysisError::Inconsistent { stage: stage.to_string(), rule: rule.to_string(), detail: detail.into() }
    }
}
