//! Built-in codes, embedded in the code-file format.

use crate::code::AdditiveCode;
use crate::codefile::parse_code;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Entry {
    pub name: &'static str,
    pub text: &'static str,
}

impl Entry {
    pub fn code(&self) -> Result<AdditiveCode> {
        parse_code(self.text)
    }
}

pub const ENTRIES: &[Entry] = &[
    Entry {
        name: "trivial-n1",
        text: include_str!("catalog/trivial-n1.qcode"),
    },
    Entry {
        name: "bell",
        text: include_str!("catalog/bell.qcode"),
    },
    Entry {
        name: "c422",
        text: include_str!("catalog/c422.qcode"),
    },
    Entry {
        name: "five13",
        text: include_str!("catalog/five13.qcode"),
    },
    Entry {
        name: "c642",
        text: include_str!("catalog/c642.qcode"),
    },
    Entry {
        name: "steane713",
        text: include_str!("catalog/steane713.qcode"),
    },
];

pub fn get(name: &str) -> Option<&'static Entry> {
    ENTRIES.iter().find(|e| e.name == name)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|e| e.name)
}

/// Parses a catalog entry by name.
pub fn load(name: &str) -> Option<Result<AdditiveCode>> {
    get(name).map(Entry::code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerators::{check_enum_properties, stabilizer_enumerators};

    #[test]
    fn every_entry_is_a_valid_stabilizer() {
        for e in ENTRIES {
            let code = e.code().unwrap();
            assert!(code.is_self_orthogonal(), "{}", e.name);
            let pair = stabilizer_enumerators(&code).unwrap();
            assert!(check_enum_properties(&pair).all_passed(), "{}", e.name);
        }
    }

    #[test]
    fn parameters() {
        let params: Vec<_> = ENTRIES
            .iter()
            .map(|e| {
                let c = e.code().unwrap();
                (e.name, c.n(), c.k().unwrap())
            })
            .collect();
        assert_eq!(
            params,
            [
                ("trivial-n1", 1, 1),
                ("bell", 2, 0),
                ("c422", 4, 2),
                ("five13", 5, 1),
                ("c642", 6, 4),
                ("steane713", 7, 1)
            ]
        );
        assert!(get("nope").is_none());
    }
}
