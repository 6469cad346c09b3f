//! Plain-text tables for analysis output.

/// Rows with a header line, rendered either aligned or comma-separated.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Self {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row<S: Into<String>>(&mut self, cells: impl IntoIterator<Item = S>) -> &mut Self {
        let row: Vec<String> = cells.into_iter().map(Into::into).collect();
        assert_eq!(row.len(), self.headers.len(), "row width");
        self.rows.push(row);
        self
    }

    pub fn to_delimited(&self, sep: char) -> String {
        let mut out = String::new();
        for line in std::iter::once(&self.headers).chain(&self.rows) {
            out.push_str(&line.join(&sep.to_string()));
            out.push('\n');
        }
        out
    }

    pub fn to_pretty(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let fmt_line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:>w$}"))
                .collect();
            format!("{}\n", padded.join("  ").trim_end())
        };
        let mut out = fmt_line(&self.headers);
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        out.push_str(&format!("{}\n", rule.join("  ")));
        for row in &self.rows {
            out.push_str(&fmt_line(row));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders() {
        let mut r = Report::new(["n", "alpha"]);
        r.row(["100", "0.07"]).row(["2000", "0.5"]);
        assert_eq!(r.to_delimited(','), "n,alpha\n100,0.07\n2000,0.5\n");
        assert_eq!(
            r.to_pretty(),
            "   n  alpha\n----  -----\n 100   0.07\n2000    0.5\n"
        );
    }
}
