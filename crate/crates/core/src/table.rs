//! Starting points of the six-step local collisions for the first eighteen
//! lines of the expanded type-I disturbance-vector table.

/// `(line, start)` pairs: the line index in the control register and the
/// local-collision starting point carried in the work register.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TypeITable {
    entries: [(u64, u64); 18],
}

static TABLE: TypeITable = TypeITable {
    entries: [
        (0, 0),
        (1, 6),
        (2, 0),
        (3, 10),
        (4, 1),
        (5, 1),
        (6, 5),
        (7, 2),
        (8, 0),
        (9, 6),
        (10, 1),
        (11, 1),
        (12, 1),
        (13, 0),
        (14, 0),
        (15, 2),
        (16, 0),
        (17, 5),
    ],
};

/// The fixed eighteen-line table.
pub fn type_i_table() -> &'static TypeITable {
    &TABLE
}

impl TypeITable {
    pub fn entries(&self) -> &[(u64, u64); 18] {
        &self.entries
    }

    /// Starting point of a line, if the line is in the table.
    pub fn start_of(&self, line: u64) -> Option<u64> {
        self.entries
            .iter()
            .find(|(l, _)| *l == line)
            .map(|(_, u)| *u)
    }

    /// Lines whose local collision starts at zero.
    pub fn zero_start_lines(&self) -> Vec<u64> {
        self.entries
            .iter()
            .filter(|(_, u)| *u == 0)
            .map(|(l, _)| *l)
            .collect()
    }

    /// CSV rendering with header `line,start`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("line,start\n");
        for (line, start) in &self.entries {
            out.push_str(&format!("{line},{start}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_entries() {
        let t = type_i_table();
        assert_eq!(t.entries().len(), 18);
        assert_eq!(t.start_of(0), Some(0));
        assert_eq!(t.start_of(1), Some(6));
        assert_eq!(t.start_of(3), Some(10));
        assert_eq!(t.start_of(17), Some(5));
        assert_eq!(t.start_of(18), None);
    }

    #[test]
    fn zero_start_lines_match() {
        assert_eq!(type_i_table().zero_start_lines(), vec![0, 2, 8, 13, 14, 16]);
    }

    #[test]
    fn csv_is_stable_across_calls() {
        let a = type_i_table().to_csv();
        let b = type_i_table().to_csv();
        assert_eq!(a.as_bytes(), b.as_bytes());
        assert!(a.starts_with("line,start\n0,0\n1,6\n"));
        assert!(a.ends_with("17,5\n"));
        assert_eq!(a.lines().count(), 19);
    }
}
