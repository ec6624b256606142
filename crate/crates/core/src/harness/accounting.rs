use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("bytes_per_token must be at least 1")]
    BytesPerToken,
    #[error("prices must be non-negative and finite")]
    Price,
    #[error("limit '{0}' must be positive")]
    Limit(&'static str),
}

/// Byte-based token estimate with per-million-token prices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TokenModel {
    bytes_per_token: u32,
    price_in: f64,
    price_out: f64,
}

impl Default for TokenModel {
    fn default() -> Self {
        TokenModel { bytes_per_token: 4, price_in: 1.25, price_out: 10.0 }
    }
}

impl TokenModel {
    pub fn new(bytes_per_token: u32, price_in: f64, price_out: f64) -> Result<Self, ConfigError> {
        if bytes_per_token == 0 {
            return Err(ConfigError::BytesPerToken);
        }
        if !(price_in.is_finite() && price_out.is_finite() && price_in >= 0.0 && price_out >= 0.0) {
            return Err(ConfigError::Price);
        }
        Ok(TokenModel { bytes_per_token, price_in, price_out })
    }

    pub fn bytes_per_token(&self) -> u32 {
        self.bytes_per_token
    }

    /// Cost in currency units for the given token totals.
    pub fn cost(&self, in_tokens: u64, out_tokens: u64) -> f64 {
        (in_tokens as f64 * self.price_in + out_tokens as f64 * self.price_out) / 1_000_000.0
    }
}

pub fn count_tokens(bytes: u64, model: &TokenModel) -> u64 {
    bytes.div_ceil(model.bytes_per_token as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_turns: u32,
    pub max_minutes: u64,
    pub max_in_tokens: u64,
    pub max_out_tokens: u64,
    pub max_in_tokens_per_request: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_turns: 150,
            max_minutes: 60,
            max_in_tokens: 1_000_000,
            max_out_tokens: 150_000,
            max_in_tokens_per_request: 150_000,
        }
    }
}

impl Limits {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let checks = [
            ("max_turns", self.max_turns as u64),
            ("max_minutes", self.max_minutes),
            ("max_in_tokens", self.max_in_tokens),
            ("max_out_tokens", self.max_out_tokens),
            ("max_in_tokens_per_request", self.max_in_tokens_per_request),
        ];
        match checks.iter().find(|(_, v)| *v == 0) {
            Some((name, _)) => Err(ConfigError::Limit(name)),
            None => Ok(()),
        }
    }
}

/// Counters as they would stand if the pending turn were carried out.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Progress {
    pub turn: u32,
    pub in_tokens: u64,
    pub out_tokens: u64,
    pub request_in_tokens: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitReason {
    TurnLimit,
    InputTokens,
    OutputTokens,
    RequestTokens,
    WallClock,
}

impl LimitReason {
    pub fn as_str(self) -> &'static str {
        match self {
            LimitReason::TurnLimit => "turn limit",
            LimitReason::InputTokens => "input tokens",
            LimitReason::OutputTokens => "output tokens",
            LimitReason::RequestTokens => "per-request input tokens",
            LimitReason::WallClock => "wall clock",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Continue,
    Terminate(LimitReason),
}

/// Checked before each turn; a turn that would cross any cap is not taken.
pub fn enforce_limits(progress: &Progress, limits: &Limits) -> Verdict {
    let reason = if progress.turn > limits.max_turns {
        Some(LimitReason::TurnLimit)
    } else if progress.elapsed > Duration::from_secs(limits.max_minutes * 60) {
        Some(LimitReason::WallClock)
    } else if progress.request_in_tokens > limits.max_in_tokens_per_request {
        Some(LimitReason::RequestTokens)
    } else if progress.in_tokens > limits.max_in_tokens {
        Some(LimitReason::InputTokens)
    } else if progress.out_tokens > limits.max_out_tokens {
        Some(LimitReason::OutputTokens)
    } else {
        None
    };
    reason.map_or(Verdict::Continue, Verdict::Terminate)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn token_counts_round_up() {
        let m = TokenModel::default();
        assert_eq!(count_tokens(4, &m), 1);
        assert_eq!(count_tokens(0, &m), 0);
        assert_eq!(count_tokens(10, &m), 3);
        assert_eq!(TokenModel::new(0, 1.0, 1.0), Err(ConfigError::BytesPerToken));
        assert_eq!(TokenModel::new(4, -1.0, 1.0), Err(ConfigError::Price));
        assert!((TokenModel::new(4, 2.0, 8.0).unwrap().cost(500_000, 250_000) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn limit_verdicts() {
        let limits = Limits::default();
        assert_eq!(limits.validate(), Ok(()));
        let ok = Progress { turn: 150, in_tokens: 1_000_000, out_tokens: 150_000, request_in_tokens: 150_000, ..Default::default() };
        assert_eq!(enforce_limits(&ok, &limits), Verdict::Continue);
        assert_eq!(enforce_limits(&Progress { turn: 151, ..ok }, &limits), Verdict::Terminate(LimitReason::TurnLimit));
        assert_eq!(enforce_limits(&Progress { in_tokens: 1_000_001, ..ok }, &limits), Verdict::Terminate(LimitReason::InputTokens));
        assert_eq!(enforce_limits(&Progress { out_tokens: 150_001, ..ok }, &limits), Verdict::Terminate(LimitReason::OutputTokens));
        assert_eq!(
            enforce_limits(&Progress { request_in_tokens: 150_001, ..ok }, &limits),
            Verdict::Terminate(LimitReason::RequestTokens)
        );
        assert_eq!(
            enforce_limits(&Progress { elapsed: Duration::from_secs(3601), ..ok }, &limits),
            Verdict::Terminate(LimitReason::WallClock)
        );
        assert_eq!(Limits { max_turns: 0, ..limits }.validate(), Err(ConfigError::Limit("max_turns")));
    }
}
