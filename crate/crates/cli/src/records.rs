//! Line-oriented `key=value` output.
//!
//! One record per line, fields separated by single spaces, keys drawn from
//! [`KEYS`] and always written in that order. Lines starting with `#` are
//! notes for humans and carry no fields.

use std::fmt;

pub const KEYS: [&str; 10] = [
    "query",
    "verdict",
    "rule",
    "anchor",
    "margin",
    "prime",
    "seed",
    "trials",
    "hf",
    "elapsed_ms",
];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Record {
    fields: [Option<String>; KEYS.len()],
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    /// Set `key`; panics on a key outside [`KEYS`] or a value that would
    /// break the line format.
    pub fn set(mut self, key: &str, value: impl fmt::Display) -> Self {
        let slot = KEYS
            .iter()
            .position(|&k| k == key)
            .unwrap_or_else(|| panic!("unknown record key {key}"));
        let value = value.to_string();
        assert!(
            !value.is_empty() && !value.contains([' ', '=', '\n']),
            "bad record value {value:?}"
        );
        self.fields[slot] = Some(value);
        self
    }

    #[cfg(test)]
    pub fn get(&self, key: &str) -> Option<&str> {
        let slot = KEYS.iter().position(|&k| k == key)?;
        self.fields[slot].as_deref()
    }
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (key, value) in KEYS.iter().zip(&self.fields) {
            if let Some(v) = value {
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{key}={v}")?;
                first = false;
            }
        }
        Ok(())
    }
}
