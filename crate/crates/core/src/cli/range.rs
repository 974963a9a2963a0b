use std::fmt;
use std::str::FromStr;

/// Integer selection from the command line: `7`, `2..100` (inclusive),
/// or a comma-separated mix such as `2..5,9,12`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntRange {
    parts: Vec<(u32, u32)>,
}

impl IntRange {
    pub fn single(v: u32) -> Self {
        Self { parts: vec![(v, v)] }
    }

    pub fn span(lo: u32, hi: u32) -> Self {
        Self { parts: vec![(lo, hi)] }
    }

    /// Every selected value, ascending and without duplicates.
    pub fn values(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.parts.iter().flat_map(|&(a, b)| a..=b).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn min(&self) -> u32 {
        self.parts.iter().map(|p| p.0).min().unwrap_or(0)
    }

    pub fn max(&self) -> u32 {
        self.parts.iter().map(|p| p.1).max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.values().len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Whether the selection is one contiguous span.
    pub fn is_span(&self) -> bool {
        self.parts.len() == 1
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .replace('_', "")
                .parse::<u32>()
                .map_err(|e| format!("bad integer {t:?}: {e}"))
        };
        let mut parts = Vec::new();
        for piece in s.split(',') {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            let (lo, hi) = match piece.split_once("..") {
                Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
                None => {
                    let v = parse(piece)?;
                    (v, v)
                }
            };
            if hi < lo {
                return Err(format!("empty range {piece:?}"));
            }
            parts.push((lo, hi));
        }
        if parts.is_empty() {
            return Err("empty selection".into());
        }
        Ok(Self { parts })
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self
            .parts
            .iter()
            .map(|&(a, b)| if a == b { a.to_string() } else { format!("{a}..{b}") })
            .collect();
        f.write_str(&text.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!("7".parse::<IntRange>().unwrap().values(), vec![7]);
        assert_eq!("2..5".parse::<IntRange>().unwrap().values(), vec![2, 3, 4, 5]);
        assert_eq!("2..=3,9, 3".parse::<IntRange>().unwrap().values(), vec![2, 3, 9]);
        assert_eq!("10_000".parse::<IntRange>().unwrap().values(), vec![10_000]);
        assert_eq!("2..100".parse::<IntRange>().unwrap().len(), 99);
        assert!("5..2".parse::<IntRange>().is_err());
        assert!("x".parse::<IntRange>().is_err());
        assert!("".parse::<IntRange>().is_err());
        assert_eq!("2..5,9".parse::<IntRange>().unwrap().to_string(), "2..5,9");
    }
}
