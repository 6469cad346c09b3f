//! Archive serialization: FASTA strands plus a `key=value` sidecar, or a
//! single binary container.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::constraints::{Alpha, GcScope};
use crate::error::{Error, Result};
use crate::huffman::Codebook;
use crate::sequence::{DnaSequence, Nucleotide};

use super::archive::{ArchiveHeader, EncodedArchive, DIGEST_LEN};
use super::params::Method;

pub const SIDECAR_MAGIC: &str = "DNACODEC";
pub const FORMAT_VERSION: u32 = 1;
const BINARY_MAGIC: &[u8; 8] = b"DNACODE\x01";

/// One record per strand, header `>strand_<i> r=<r>`, sequence on one line.
pub fn write_fasta(strands: &[DnaSequence]) -> String {
    let mut out = String::with_capacity(strands.iter().map(|s| s.len() + 24).sum());
    for (i, s) in strands.iter().enumerate() {
        let r = s.bases().first().map_or(0, |b| b.index());
        let _ = writeln!(out, ">strand_{i} r={r}\n{s}");
    }
    out
}

/// Parses FASTA records in order. Multi-line sequences are joined; an
/// `r=` annotation, when present, must agree with the prefix nucleotide.
pub fn read_fasta(text: &str) -> Result<Vec<DnaSequence>> {
    let mut strands = Vec::new();
    let mut current: Option<(Option<u8>, String)> = None;
    let finish =
        |rec: Option<(Option<u8>, String)>, strands: &mut Vec<DnaSequence>| -> Result<()> {
            if let Some((r, seq)) = rec {
                let idx = strands.len();
                let s: DnaSequence = seq
                    .parse()
                    .map_err(|e| Error::corruption(format!("record {idx}: {e}")))?;
                if s.is_empty() {
                    return Err(Error::corruption(format!("record {idx} is empty")));
                }
                if let Some(r) = r {
                    if s.bases()[0].index() != r {
                        return Err(Error::corruption(format!(
                            "record {idx}: header says r={r} but prefix is {}",
                            s.bases()[0]
                        )));
                    }
                }
                strands.push(s);
            }
            Ok(())
        };
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix('>') {
            finish(current.take(), &mut strands)?;
            let r = header
                .split_whitespace()
                .find_map(|t| t.strip_prefix("r="))
                .map(|v| {
                    v.parse::<u8>().map_err(|_| {
                        Error::corruption(format!("line {}: bad r value {v:?}", lineno + 1))
                    })
                })
                .transpose()?;
            current = Some((r, String::new()));
        } else {
            match current.as_mut() {
                Some((_, seq)) => seq.push_str(line),
                None => {
                    return Err(Error::corruption(format!(
                        "line {}: sequence before any header",
                        lineno + 1
                    )))
                }
            }
        }
    }
    finish(current, &mut strands)?;
    Ok(strands)
}

fn join_patterns(patterns: &[DnaSequence]) -> String {
    patterns
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn write_sidecar(h: &ArchiveHeader) -> String {
    let mut out = String::new();
    let mut kv = |k: &str, v: &dyn std::fmt::Display| {
        let _ = writeln!(out, "{k}={v}");
    };
    kv("magic", &SIDECAR_MAGIC);
    kv("version", &FORMAT_VERSION);
    kv("method", &h.method);
    kv("m", &h.m);
    kv("alpha", &h.alpha);
    kv("n", &h.n);
    kv("max_iterations", &h.max_iterations);
    kv("gc_scope", &h.gc_scope.as_str());
    kv("forbidden", &join_patterns(&h.forbidden));
    kv(
        "source_symbol_bits",
        &h.source_symbol_bits
            .map_or("none".to_string(), |k| k.to_string()),
    );
    kv("original_bit_length", &h.original_bit_length);
    kv("payload_bit_length", &h.payload_bit_length);
    kv("digest", &h.digest.map_or("none".to_string(), hex::encode));
    kv(
        "codebook",
        &h.codebook
            .as_ref()
            .map_or("none".to_string(), |c| hex::encode(c.to_bytes())),
    );
    out
}

fn parse_field<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::corruption(format!("sidecar field {key}={v:?} is invalid")))
}

fn parse_digest(v: &str) -> Result<Option<[u8; DIGEST_LEN]>> {
    if v == "none" {
        return Ok(None);
    }
    let bytes = hex::decode(v).map_err(|_| Error::corruption("digest is not hex"))?;
    let arr = bytes
        .try_into()
        .map_err(|_| Error::corruption(format!("digest must be {DIGEST_LEN} bytes")))?;
    Ok(Some(arr))
}

fn parse_forbidden(v: &str) -> Result<Vec<DnaSequence>> {
    v.split(',')
        .filter(|p| !p.is_empty())
        .map(|p| parse_field("forbidden", p))
        .collect()
}

pub fn read_sidecar(text: &str) -> Result<ArchiveHeader> {
    let mut fields = HashMap::new();
    for line in text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
    {
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::corruption(format!("sidecar line {line:?} has no '='")))?;
        if fields.insert(k.trim(), v.trim()).is_some() {
            return Err(Error::corruption(format!("sidecar key {k} repeated")));
        }
    }
    let get = |k: &str| {
        fields
            .get(k)
            .copied()
            .ok_or_else(|| Error::corruption(format!("sidecar is missing {k}")))
    };
    if get("magic")? != SIDECAR_MAGIC {
        return Err(Error::corruption("not a dnacodec sidecar"));
    }
    let version: u32 = parse_field("version", get("version")?)?;
    if version != FORMAT_VERSION {
        return Err(Error::corruption(format!(
            "unsupported sidecar version {version}"
        )));
    }
    let source_symbol_bits = match get("source_symbol_bits")? {
        "none" | "0" => None,
        v => Some(parse_field("source_symbol_bits", v)?),
    };
    let codebook = match get("codebook")? {
        "none" => None,
        v => Some(Codebook::from_bytes(
            &hex::decode(v).map_err(|_| Error::corruption("codebook is not hex"))?,
        )?),
    };
    let header = ArchiveHeader {
        method: parse_field("method", get("method")?)?,
        m: parse_field("m", get("m")?)?,
        alpha: parse_field::<Alpha>("alpha", get("alpha")?)?,
        n: parse_field("n", get("n")?)?,
        max_iterations: parse_field("max_iterations", get("max_iterations")?)?,
        gc_scope: parse_field::<GcScope>("gc_scope", get("gc_scope")?)?,
        forbidden: parse_forbidden(get("forbidden")?)?,
        source_symbol_bits,
        original_bit_length: parse_field("original_bit_length", get("original_bit_length")?)?,
        payload_bit_length: parse_field("payload_bit_length", get("payload_bit_length")?)?,
        codebook,
        digest: parse_digest(get("digest")?)?,
    };
    check_header(&header)?;
    Ok(header)
}

fn check_header(h: &ArchiveHeader) -> Result<()> {
    h.params()?;
    if h.source_symbol_bits.is_some() != h.codebook.is_some() {
        return Err(Error::corruption(
            "source symbol width and codebook must appear together",
        ));
    }
    if let (Some(k), Some(book)) = (h.source_symbol_bits, &h.codebook) {
        if book.k() != k {
            return Err(Error::corruption(
                "codebook symbol width disagrees with header",
            ));
        }
    } else if h.original_bit_length != h.payload_bit_length {
        return Err(Error::corruption(
            "uncompressed archive with differing lengths",
        ));
    }
    Ok(())
}

pub fn read_archive(fasta: &str, sidecar: &str) -> Result<EncodedArchive> {
    Ok(EncodedArchive {
        header: read_sidecar(sidecar)?,
        strands: read_fasta(fasta)?,
    })
}

struct Reader<'a> {
    bytes: &'a [u8],
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.bytes.len() < n {
            return Err(Error::corruption("binary archive is truncated"));
        }
        let (head, rest) = self.bytes.split_at(n);
        self.bytes = rest;
        Ok(head)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn string(&mut self) -> Result<&'a str> {
        let len = self.u32()? as usize;
        std::str::from_utf8(self.take(len)?).map_err(|_| Error::corruption("invalid UTF-8 field"))
    }
}

fn put_str(out: &mut Vec<u8>, s: &str) {
    out.extend_from_slice(&(s.len() as u32).to_le_bytes());
    out.extend_from_slice(s.as_bytes());
}

/// Self-contained binary form: magic, little-endian header fields, then
/// each strand as a u32 length and 2-bit packed bases.
pub fn to_binary(archive: &EncodedArchive) -> Vec<u8> {
    let h = &archive.header;
    let mut out = Vec::with_capacity(64 + archive.total_nt() / 4 + archive.strands.len() * 5);
    out.extend_from_slice(BINARY_MAGIC);
    out.push(match h.method {
        Method::WholeStream => 0,
        Method::Block11 => 1,
    });
    out.push(h.m as u8);
    put_str(&mut out, &h.alpha.to_string());
    out.extend_from_slice(&(h.n as u32).to_le_bytes());
    out.push(h.max_iterations);
    out.push(match h.gc_scope {
        GcScope::PayloadOnly => 0,
        GcScope::FullStrand => 1,
    });
    put_str(&mut out, &join_patterns(&h.forbidden));
    out.push(h.source_symbol_bits.unwrap_or(0) as u8);
    out.extend_from_slice(&h.original_bit_length.to_le_bytes());
    out.extend_from_slice(&h.payload_bit_length.to_le_bytes());
    match h.digest {
        Some(d) => {
            out.push(1);
            out.extend_from_slice(&d);
        }
        None => out.push(0),
    }
    let book = h
        .codebook
        .as_ref()
        .map(Codebook::to_bytes)
        .unwrap_or_default();
    out.extend_from_slice(&(book.len() as u32).to_le_bytes());
    out.extend_from_slice(&book);
    out.extend_from_slice(&(archive.strands.len() as u32).to_le_bytes());
    for s in &archive.strands {
        out.extend_from_slice(&(s.len() as u32).to_le_bytes());
        for quad in s.bases().chunks(4) {
            let byte = quad
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, b)| acc | (b.index() << (6 - 2 * i)));
            out.push(byte);
        }
    }
    out
}

pub fn from_binary(bytes: &[u8]) -> Result<EncodedArchive> {
    let mut r = Reader { bytes };
    if r.take(8)? != BINARY_MAGIC {
        return Err(Error::corruption("not a dnacodec binary archive"));
    }
    let method = match r.u8()? {
        0 => Method::WholeStream,
        1 => Method::Block11,
        v => return Err(Error::corruption(format!("unknown method code {v}"))),
    };
    let m = r.u8()? as usize;
    let alpha = parse_field("alpha", r.string()?)?;
    let n = r.u32()? as usize;
    let max_iterations = r.u8()?;
    let gc_scope = match r.u8()? {
        0 => GcScope::PayloadOnly,
        1 => GcScope::FullStrand,
        v => return Err(Error::corruption(format!("unknown GC scope code {v}"))),
    };
    let forbidden = parse_forbidden(r.string()?)?;
    let k = r.u8()?;
    let original_bit_length = r.u64()?;
    let payload_bit_length = r.u64()?;
    let digest = match r.u8()? {
        0 => None,
        1 => Some(r.take(DIGEST_LEN)?.try_into().unwrap()),
        v => return Err(Error::corruption(format!("bad digest flag {v}"))),
    };
    let book_len = r.u32()? as usize;
    let codebook = match book_len {
        0 => None,
        _ => Some(Codebook::from_bytes(r.take(book_len)?)?),
    };
    let count = r.u32()? as usize;
    let mut strands = Vec::with_capacity(count.min(1 << 20));
    for _ in 0..count {
        let len = r.u32()? as usize;
        let packed = r.take(len.div_ceil(4))?;
        let bases: Vec<Nucleotide> = (0..len)
            .map(|i| Nucleotide::from_index((packed[i / 4] >> (6 - 2 * (i % 4))) & 3).unwrap())
            .collect();
        strands.push(DnaSequence::from(bases));
    }
    if !r.bytes.is_empty() {
        return Err(Error::corruption("trailing bytes after the last strand"));
    }
    let header = ArchiveHeader {
        method,
        m,
        alpha,
        n,
        max_iterations,
        gc_scope,
        forbidden,
        source_symbol_bits: (k != 0).then_some(u32::from(k)),
        original_bit_length,
        payload_bit_length,
        codebook,
        digest,
    };
    check_header(&header)?;
    Ok(EncodedArchive { header, strands })
}
