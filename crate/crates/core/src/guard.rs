//! Size guards for enumeration and object materialization.
//!
//! Enumeration counts are bounded by `FMACHINA_SIZE_GUARD` when set, otherwise
//! by [`DEFAULT_ENUMERATION_BOUND`]. Materialized objects are bounded by
//! [`DEFAULT_OBJECT_BOUND`].

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_BOUND: u64 = 1_000_000;
pub const DEFAULT_OBJECT_BOUND: u64 = 100_000;
pub const SIZE_GUARD_ENV: &str = "FMACHINA_SIZE_GUARD";

pub fn enumeration_bound() -> u64 {
    static BOUND: OnceLock<u64> = OnceLock::new();
    *BOUND.get_or_init(|| {
        std::env::var(SIZE_GUARD_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_ENUMERATION_BOUND)
    })
}

pub fn object_bound() -> u64 {
    DEFAULT_OBJECT_BOUND
}

/// `base^exp`, or `None` past `u128`.
pub fn checked_power(base: usize, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
        if acc == 0 {
            return Some(0);
        }
    }
    Some(acc)
}

fn render(size: Option<u128>) -> String {
    size.map_or_else(|| "more than 2^128".to_string(), |s| s.to_string())
}

pub fn check_object(what: impl FnOnce() -> String, size: Option<u128>) -> Result<usize> {
    let bound = object_bound();
    match size {
        Some(s) if s <= bound as u128 => Ok(s as usize),
        _ => Err(Error::ObjectTooLarge {
            what: what(),
            size: render(size),
            bound,
        }),
    }
}

pub fn check_enumeration(size: Option<u128>, bound: u64) -> Result<usize> {
    match size {
        Some(s) if s <= bound as u128 => Ok(s as usize),
        _ => Err(Error::EnumerationTooLarge {
            count: render(size),
            bound,
        }),
    }
}
