//! Plain-text serialization of rings.
//!
//! ```text
//! ring <m>
//! <m add rows of m integers>
//! <m mul rows of m integers>
//! labels            (optional)
//! <m tokens>        (with the labels line)
//! ```
//!
//! Whitespace-separated throughout; readers reject trailing garbage so a
//! written file round-trips bit-exactly.

use super::{FiniteRing, RingError};

impl FiniteRing {
    /// Parses and fully re-validates a ring from its text form.
    pub fn from_text(text: &str) -> Result<Self, RingError> {
        let mut tokens = text.split_whitespace();
        match tokens.next() {
            Some("ring") => {}
            Some(t) => return Err(RingError::Format(format!("expected `ring`, found `{t}`"))),
            None => return Err(RingError::Format("empty input".into())),
        }
        let m: usize = match tokens.next() {
            Some(t) => t
                .parse()
                .map_err(|_| RingError::Format(format!("bad order `{t}`")))?,
            None => return Err(RingError::Format("missing order".into())),
        };
        if m == 0 {
            return Err(RingError::EmptyRing);
        }
        let mut read_table = |name: &str| -> Result<Vec<Vec<usize>>, RingError> {
            let mut rows = Vec::with_capacity(m);
            for i in 0..m {
                let mut row = Vec::with_capacity(m);
                for j in 0..m {
                    let t = tokens.next().ok_or_else(|| {
                        RingError::Format(format!("{name} table ends at row {i}, column {j}"))
                    })?;
                    let v: usize = t.parse().map_err(|_| {
                        RingError::Format(format!("bad {name} entry `{t}` at row {i}, column {j}"))
                    })?;
                    row.push(v);
                }
                rows.push(row);
            }
            Ok(rows)
        };
        let add_rows = read_table("add")?;
        let mul_rows = read_table("mul")?;
        let labels = match tokens.next() {
            None => None,
            Some("labels") => {
                let mut l = Vec::with_capacity(m);
                for i in 0..m {
                    let t = tokens
                        .next()
                        .ok_or_else(|| RingError::Format(format!("labels end at entry {i}")))?;
                    l.push(t.to_string());
                }
                Some(l)
            }
            Some(t) => {
                return Err(RingError::Format(format!(
                    "unexpected token `{t}` after tables"
                )))
            }
        };
        if let Some(t) = tokens.next() {
            return Err(RingError::Format(format!("trailing token `{t}`")));
        }
        Self::validate_with_labels(m, &add_rows, &mul_rows, labels)
    }

    /// Renders the exact text form parsed by [`FiniteRing::from_text`].
    pub fn to_text(&self) -> String {
        let m = self.order();
        let mut out = format!("ring {m}\n");
        let row = |table: &dyn Fn(usize, usize) -> usize, i: usize| {
            (0..m)
                .map(|j| table(i, j).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        for i in 0..m {
            out.push_str(&row(&|a, b| self.add(a, b), i));
            out.push('\n');
        }
        for i in 0..m {
            out.push_str(&row(&|a, b| self.mul(a, b), i));
            out.push('\n');
        }
        if let Some(labels) = self.labels() {
            out.push_str("labels\n");
            out.push_str(&labels.join(" "));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_labels() {
        let r = FiniteRing::scaled_zmod(2, 3).unwrap();
        let text = r.to_text();
        let back = FiniteRing::from_text(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn round_trip_without_labels() {
        let add = vec![vec![0, 1], vec![1, 0]];
        let mul = vec![vec![0, 0], vec![0, 0]];
        let r = FiniteRing::validate(2, &add, &mul).unwrap();
        let back = FiniteRing::from_text(&r.to_text()).unwrap();
        assert_eq!(back, r);
        assert!(back.labels().is_none());
    }

    #[test]
    fn round_trip_direct_sum_labels() {
        let r = FiniteRing::scaled_zmod(2, 2)
            .unwrap()
            .direct_sum(&FiniteRing::scaled_zmod(3, 2).unwrap());
        let back = FiniteRing::from_text(&r.to_text()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.label(5), Some("2|6"));
    }

    #[test]
    fn exact_bytes_for_two_element_ring() {
        let r = FiniteRing::scaled_zmod(2, 2).unwrap();
        assert_eq!(r.to_text(), "ring 2\n0 1\n1 0\n0 0\n0 0\nlabels\n0 2\n");
    }

    #[test]
    fn trailing_garbage_rejected() {
        let r = FiniteRing::scaled_zmod(2, 2).unwrap();
        let mut text = r.to_text();
        text.push_str("余分\n");
        assert!(matches!(
            FiniteRing::from_text(&text),
            Err(RingError::Format(_))
        ));
    }

    #[test]
    fn truncated_table_rejected() {
        let text = "ring 2\n0 1\n1 0\n0 0\n";
        assert!(matches!(
            FiniteRing::from_text(text),
            Err(RingError::Format(_))
        ));
    }

    #[test]
    fn bad_header_rejected() {
        assert!(matches!(
            FiniteRing::from_text("rings 2\n"),
            Err(RingError::Format(_))
        ));
        assert!(matches!(
            FiniteRing::from_text(""),
            Err(RingError::Format(_))
        ));
        assert!(matches!(
            FiniteRing::from_text("ring x\n"),
            Err(RingError::Format(_))
        ));
        assert!(matches!(
            FiniteRing::from_text("ring 0\n"),
            Err(RingError::EmptyRing)
        ));
    }

    #[test]
    fn short_labels_rejected() {
        let text = "ring 2\n0 1\n1 0\n0 0\n0 0\nlabels\nonly_one\n";
        assert!(matches!(
            FiniteRing::from_text(text),
            Err(RingError::Format(_))
        ));
    }

    #[test]
    fn parsed_tables_are_revalidated() {
        // addition table with no identity
        let text = "ring 2\n1 1\n1 1\n0 0\n0 0\n";
        assert!(FiniteRing::from_text(text).is_err());
    }
}
