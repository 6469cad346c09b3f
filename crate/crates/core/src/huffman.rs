//! Minimum-variance Huffman coding over fixed-width k-bit source symbols.
//!
//! Codes are canonical, so a codebook is fully described by its
//! `(symbol, length)` pairs.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::bits::{push_u64, to_u64, BitStr, Bits};
use crate::error::{Error, Result};

pub const MAX_SYMBOL_BITS: u32 = 32;
const MAX_CODE_LEN: u8 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    k: u32,
    /// `(symbol, length)` in canonical order: by length, then symbol.
    entries: Vec<(u32, u8)>,
    codes: HashMap<u32, (u64, u8)>,
    /// Per code length: first canonical code, entry count, offset into `entries`.
    first_code: Vec<u64>,
    count: Vec<usize>,
    offset: Vec<usize>,
}

fn check_k(k: u32) -> Result<()> {
    if !(1..=MAX_SYMBOL_BITS).contains(&k) {
        return Err(Error::domain(format!(
            "symbol width {k} outside 1..={MAX_SYMBOL_BITS}"
        )));
    }
    Ok(())
}

/// Splits `data` into k-bit symbols, zero-padding the last one.
fn symbols(data: &BitStr, k: u32) -> impl Iterator<Item = u32> + '_ {
    let k = k as usize;
    data.chunks(k)
        .map(move |c| (to_u64(c) << (k - c.len())) as u32)
}

pub fn build_codebook(data: &BitStr, k: u32) -> Result<Codebook> {
    check_k(k)?;
    if data.is_empty() {
        return Err(Error::domain("cannot build a codebook from empty data"));
    }
    let mut freq: HashMap<u32, u64> = HashMap::new();
    for s in symbols(data, k) {
        *freq.entry(s).or_default() += 1;
    }
    let mut weights: Vec<(u32, u64)> = freq.into_iter().collect();
    weights.sort_unstable_by_key(|&(s, w)| (w, s));
    Codebook::from_lengths(k, min_variance_lengths(&weights))
}

/// Two-queue Huffman construction. On equal weights the older node wins:
/// leaves before merged nodes, earlier merges before later ones. This keeps
/// merged subtrees high in the tree and minimises length variance.
///
/// `weights` must be sorted by ascending weight.
fn min_variance_lengths(weights: &[(u32, u64)]) -> Vec<(u32, u8)> {
    if weights.len() == 1 {
        return vec![(weights[0].0, 1)];
    }
    // nodes 0..n are leaves; merged nodes get parents recorded
    let n = weights.len();
    let mut parent = vec![usize::MAX; 2 * n - 1];
    let mut leaves: VecDeque<(u64, usize)> = weights
        .iter()
        .enumerate()
        .map(|(i, &(_, w))| (w, i))
        .collect();
    let mut merged: VecDeque<(u64, usize)> = VecDeque::new();
    let mut next = n;

    let pop_min = |leaves: &mut VecDeque<(u64, usize)>, merged: &mut VecDeque<(u64, usize)>| {
        match (leaves.front(), merged.front()) {
            (Some(l), Some(m)) if l.0 <= m.0 => leaves.pop_front(),
            (Some(_), None) => leaves.pop_front(),
            _ => merged.pop_front(),
        }
        .unwrap()
    };
    while leaves.len() + merged.len() > 1 {
        let a = pop_min(&mut leaves, &mut merged);
        let b = pop_min(&mut leaves, &mut merged);
        parent[a.1] = next;
        parent[b.1] = next;
        merged.push_back((a.0 + b.0, next));
        next += 1;
    }
    // parents always have larger indices, so walk downward from the root
    let mut depth = vec![0u8; next];
    for i in (0..next - 1).rev() {
        depth[i] = depth[parent[i]] + 1;
    }
    weights
        .iter()
        .enumerate()
        .map(|(i, &(s, _))| (s, depth[i]))
        .collect()
}

impl Codebook {
    /// Assigns canonical codes to the given lengths.
    pub fn from_lengths(k: u32, mut lengths: Vec<(u32, u8)>) -> Result<Self> {
        check_k(k)?;
        if lengths.is_empty() {
            return Err(Error::domain("codebook has no symbols"));
        }
        let limit = if k == 32 { u64::MAX } else { (1u64 << k) - 1 };
        let mut kraft: u128 = 0;
        for &(s, len) in &lengths {
            if u64::from(s) > limit {
                return Err(Error::domain(format!("symbol {s:#x} wider than {k} bits")));
            }
            if len == 0 || len > MAX_CODE_LEN {
                return Err(Error::domain(format!(
                    "code length {len} for symbol {s:#x}"
                )));
            }
            kraft += 1u128 << (MAX_CODE_LEN - len);
        }
        if kraft > 1u128 << MAX_CODE_LEN {
            return Err(Error::domain("code lengths violate the Kraft inequality"));
        }
        lengths.sort_unstable_by_key(|&(s, len)| (len, s));
        let max_len = lengths.last().unwrap().1 as usize;
        let mut first_code = vec![0u64; max_len + 1];
        let mut count = vec![0usize; max_len + 1];
        let mut offset = vec![0usize; max_len + 1];
        let mut codes = HashMap::with_capacity(lengths.len());
        let mut code: u64 = 0;
        let mut prev_len = lengths[0].1;
        for (i, &(s, len)) in lengths.iter().enumerate() {
            if len != prev_len {
                code <<= len - prev_len;
                prev_len = len;
            }
            if count[len as usize] == 0 {
                first_code[len as usize] = code;
                offset[len as usize] = i;
            }
            count[len as usize] += 1;
            if codes.insert(s, (code, len)).is_some() {
                return Err(Error::domain(format!("symbol {s:#x} listed twice")));
            }
            code = code.wrapping_add(1);
        }
        Ok(Self {
            k,
            entries: lengths,
            codes,
            first_code,
            count,
            offset,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(symbol, length)` pairs in canonical order.
    pub fn lengths(&self) -> &[(u32, u8)] {
        &self.entries
    }

    pub fn code(&self, symbol: u32) -> Option<(u64, u8)> {
        self.codes.get(&symbol).copied()
    }

    pub fn kraft_sum(&self) -> f64 {
        self.entries
            .iter()
            .map(|&(_, l)| 0.5f64.powi(l as i32))
            .sum()
    }

    /// Canonical binary form: `k` (u8), entry count (u32 LE), then
    /// `symbol` (u32 LE) and `length` (u8) per entry.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(5 + self.entries.len() * 5);
        out.push(self.k as u8);
        out.extend_from_slice(&(self.entries.len() as u32).to_le_bytes());
        for &(s, len) in &self.entries {
            out.extend_from_slice(&s.to_le_bytes());
            out.push(len);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let bad = || Error::corruption("truncated codebook");
        let k = u32::from(*bytes.first().ok_or_else(bad)?);
        let n = u32::from_le_bytes(bytes.get(1..5).ok_or_else(bad)?.try_into().unwrap()) as usize;
        let body = &bytes[5..];
        if body.len() != n * 5 {
            return Err(bad());
        }
        let lengths = body
            .chunks_exact(5)
            .map(|c| (u32::from_le_bytes(c[..4].try_into().unwrap()), c[4]))
            .collect();
        Self::from_lengths(k, lengths).map_err(|e| Error::corruption(format!("codebook: {e}")))
    }

    /// `symbol-hex,length,code-bits` lines for audit.
    pub fn dump_text(&self) -> String {
        let width = self.k.div_ceil(4) as usize;
        let mut out = String::new();
        for &(s, len) in &self.entries {
            let (code, _) = self.codes[&s];
            let _ = writeln!(out, "{s:0width$x},{len},{code:0len$b}", len = len as usize);
        }
        out
    }
}

pub fn compress(data: &BitStr, book: &Codebook) -> Result<Bits> {
    let mut out = Bits::new();
    for s in symbols(data, book.k) {
        let (code, len) = book
            .code(s)
            .ok_or_else(|| Error::domain(format!("symbol {s:#x} has no code")))?;
        push_u64(&mut out, code, len as usize);
    }
    Ok(out)
}

/// Inverse of [`compress`]. The stream must decode to exactly the symbols
/// covering `original_bit_length` bits with nothing left over.
pub fn decompress(bits: &BitStr, book: &Codebook, original_bit_length: u64) -> Result<Bits> {
    let k = book.k as usize;
    let n_symbols = (original_bit_length as usize).div_ceil(k);
    let mut out = Bits::with_capacity(n_symbols * k);
    let max_len = book.count.len() - 1;
    let mut iter = bits.iter().by_vals();
    for decoded in 0..n_symbols {
        let mut code = 0u64;
        let mut len = 0usize;
        let symbol = loop {
            let bit = iter.next().ok_or_else(|| {
                Error::corruption(format!(
                    "stream ends inside symbol {decoded} of {n_symbols}"
                ))
            })?;
            code = (code << 1) | u64::from(bit);
            len += 1;
            if len > max_len {
                return Err(Error::corruption("bit pattern matches no code"));
            }
            if book.count[len] > 0 && code >= book.first_code[len] {
                let idx = (code - book.first_code[len]) as usize;
                if idx < book.count[len] {
                    break book.entries[book.offset[len] + idx].0;
                }
            }
        };
        push_u64(&mut out, u64::from(symbol), k);
    }
    if iter.next().is_some() {
        return Err(Error::corruption("trailing bits after the last symbol"));
    }
    out.truncate(original_bit_length as usize);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lengths_by_symbol(book: &Codebook) -> HashMap<u32, u8> {
        book.lengths().iter().copied().collect()
    }

    fn symbols_from(values: &[u32], k: u32) -> Bits {
        let mut b = Bits::new();
        for &v in values {
            push_u64(&mut b, u64::from(v), k as usize);
        }
        b
    }

    #[test]
    fn degenerate_source_gets_one_bit() {
        let data = symbols_from(&[5, 5, 5], 4);
        let book = build_codebook(&data, 4).unwrap();
        assert_eq!(book.lengths(), &[(5, 1)]);
        let c = compress(&data, &book).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(decompress(&c, &book, 12).unwrap(), data);
    }

    #[test]
    fn two_equiprobable_symbols() {
        let book = build_codebook(&symbols_from(&[1, 2], 2), 2).unwrap();
        assert!(book.lengths().iter().all(|&(_, l)| l == 1));
    }

    #[test]
    fn four_uniform_symbols_balanced() {
        let book = build_codebook(&symbols_from(&[0, 1, 2, 3], 2), 2).unwrap();
        assert!(book.lengths().iter().all(|&(_, l)| l == 2));
    }

    #[test]
    fn tie_prefers_leaves() {
        // weights 1,1,2,2: merging (1,1)=2 then ties with two leaves of 2;
        // taking leaves first gives all lengths 2 rather than 1,2,3,3
        let data = symbols_from(&[0, 1, 2, 2, 3, 3], 2);
        let book = build_codebook(&data, 2).unwrap();
        assert!(
            book.lengths().iter().all(|&(_, l)| l == 2),
            "{:?}",
            book.lengths()
        );
    }

    #[test]
    fn empty_and_width_errors() {
        assert!(build_codebook(&Bits::new(), 8).is_err());
        assert!(build_codebook(&symbols_from(&[1], 8), 0).is_err());
        assert!(build_codebook(&symbols_from(&[1], 8), 33).is_err());
    }

    #[test]
    fn missing_symbol_and_corrupt_streams() {
        let data = symbols_from(&[0, 1, 2, 2], 2);
        let book = build_codebook(&data, 2).unwrap();
        assert!(compress(&symbols_from(&[3], 2), &book).is_err());
        let c = compress(&data, &book).unwrap();
        assert!(decompress(&c[..c.len() - 1], &book, 8).is_err());
        let mut extra = c.clone();
        extra.push(false);
        assert!(decompress(&extra, &book, 8).is_err());
        assert!(decompress(&Bits::new(), &book, 0).unwrap().is_empty());
    }

    #[test]
    fn tail_is_padded() {
        let mut data = symbols_from(&[0xab, 0xcd], 8);
        data.truncate(13);
        let book = build_codebook(&data, 8).unwrap();
        assert!(book.code(0xc8).is_some());
        let c = compress(&data, &book).unwrap();
        assert_eq!(decompress(&c, &book, 13).unwrap(), data);
    }

    #[test]
    fn serialization_round_trips() {
        let data = symbols_from(&[1, 1, 1, 2, 3, 3, 7, 9, 9, 9, 9], 4);
        let book = build_codebook(&data, 4).unwrap();
        assert_eq!(Codebook::from_bytes(&book.to_bytes()).unwrap(), book);
        assert!(Codebook::from_bytes(&book.to_bytes()[..7]).is_err());
        let dump = book.dump_text();
        assert_eq!(dump.lines().count(), book.len());
    }

    /// All complete length assignments for `n` leaves with lengths < n.
    fn complete_assignments(n: usize) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let mut cur = vec![1u8; n];
        loop {
            let kraft: f64 = cur.iter().map(|&l| 0.5f64.powi(l as i32)).sum();
            if (kraft - 1.0).abs() < 1e-12 {
                out.push(cur.clone());
            }
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                if (cur[i] as usize) < n - 1 {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 1;
                i += 1;
            }
        }
    }

    #[test]
    fn minimum_variance_among_optimal_codes() {
        let cases: &[&[u64]] = &[
            &[1, 1, 2, 2],
            &[2, 2, 2, 3, 3],
            &[1, 1, 1, 1, 2, 2],
            &[3, 3, 3, 3, 4, 8],
            &[1, 2, 3, 4, 5, 6],
            &[5, 5, 5, 5, 10, 10],
        ];
        for weights in cases {
            let data: Vec<u32> = weights
                .iter()
                .enumerate()
                .flat_map(|(s, &w)| std::iter::repeat_n(s as u32, w as usize))
                .collect();
            let book = build_codebook(&symbols_from(&data, 3), 3).unwrap();
            let ours = lengths_by_symbol(&book);
            let total: u64 = weights.iter().sum();
            let cost =
                |ls: &[u8]| -> u64 { ls.iter().zip(*weights).map(|(&l, &w)| l as u64 * w).sum() };
            let var = |ls: &[u8]| -> f64 {
                let mean = cost(ls) as f64 / total as f64;
                ls.iter()
                    .zip(*weights)
                    .map(|(&l, &w)| w as f64 * (l as f64 - mean).powi(2))
                    .sum::<f64>()
                    / total as f64
            };
            let all = complete_assignments(weights.len());
            let best_cost = all.iter().map(|a| cost(a)).min().unwrap();
            let best_var = all
                .iter()
                .filter(|a| cost(a) == best_cost)
                .map(|a| var(a))
                .fold(f64::INFINITY, f64::min);
            let ours: Vec<u8> = (0..weights.len() as u32).map(|s| ours[&s]).collect();
            assert_eq!(cost(&ours), best_cost, "{weights:?}");
            assert!(
                (var(&ours) - best_var).abs() < 1e-12,
                "{weights:?}: {ours:?}"
            );
        }
    }

    proptest! {
        #[test]
        fn round_trip_and_code_properties(bytes in proptest::collection::vec(any::<u8>(), 1..300), k in 1u32..=20, cut in 0usize..8) {
            let mut data = Bits::from_slice(&bytes);
            let new_len = data.len().saturating_sub(cut).max(1);
            data.truncate(new_len);
            let book = build_codebook(&data, k).unwrap();
            prop_assert!(book.kraft_sum() <= 1.0 + 1e-12);
            // prefix-free
            let codes: Vec<(u64, u8)> = book.lengths().iter().map(|&(s, _)| book.code(s).unwrap()).collect();
            for (i, &(a, la)) in codes.iter().enumerate() {
                for &(b, lb) in &codes[i + 1..] {
                    let l = la.min(lb);
                    prop_assert!(a >> (la - l) != b >> (lb - l));
                }
            }
            let c = compress(&data, &book).unwrap();
            // average length within entropy + 1
            let n_sym = data.len().div_ceil(k as usize) as f64;
            let mut freq: HashMap<u32, f64> = HashMap::new();
            for s in symbols(&data, k) { *freq.entry(s).or_default() += 1.0; }
            let entropy: f64 = freq.values().map(|&f| { let p = f / n_sym; -p * p.log2() }).sum();
            prop_assert!(c.len() as f64 / n_sym <= entropy + 1.0 + 1e-9);
            prop_assert_eq!(decompress(&c, &book, data.len() as u64).unwrap(), data);
        }
    }
}
