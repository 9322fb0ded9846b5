use std::collections::BTreeMap;

use hra::{Name, Word};

/// Interns textual names. The same text always maps to the same name.
#[derive(Clone, Debug, Default)]
pub struct NameTable {
    by_text: BTreeMap<String, Name>,
    by_name: BTreeMap<Name, String>,
}

impl NameTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, text: &str) -> Name {
        if let Some(&a) = self.by_text.get(text) {
            return a;
        }
        let a = Name(self.by_text.len() as u32);
        self.by_text.insert(text.to_owned(), a);
        self.by_name.insert(a, text.to_owned());
        a
    }

    pub fn get(&self, text: &str) -> Option<Name> {
        self.by_text.get(text).copied()
    }

    /// The text of `a`; names never interned print as `_<id>`.
    pub fn text(&self, a: Name) -> String {
        match self.by_name.get(&a) {
            Some(s) => s.clone(),
            None => format!("_{}", a.0),
        }
    }

    pub fn word<S: AsRef<str>>(&mut self, tokens: &[S]) -> Word {
        tokens.iter().map(|t| self.intern(t.as_ref())).collect()
    }

    pub fn show_word(&self, w: &[Name]) -> String {
        w.iter().map(|&a| self.text(a)).collect::<Vec<_>>().join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_stable() {
        let mut t = NameTable::new();
        let a = t.intern("a");
        let b = t.intern("b");
        assert_ne!(a, b);
        assert_eq!(t.intern("a"), a);
        assert_eq!(t.text(b), "b");
        assert_eq!(t.text(Name(9)), "_9");
        assert_eq!(t.show_word(&t.clone().word(&["b", "a"])), "b a");
    }
}
