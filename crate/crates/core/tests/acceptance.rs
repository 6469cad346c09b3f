//! End-to-end acceptance checks. Each test prints one PASS/FAIL line.

use std::time::{Duration, Instant};

use dnacodec::analysis::{
    coding_efficiency, default_grid_step, info_density, iteration_histogram, min_alpha,
    symbol_gc_distribution, CHANNEL_CAPACITY,
};
use dnacodec::bits::{from_bytes, hamming, Bits};
use dnacodec::codec::{
    decode_payload, encode, encode_chunk, CodecParams, Method, Randomizer, RunLog, StrandAttempt,
    BLOCK_BITS, BLOCK_NT,
};
use dnacodec::constraints::{Alpha, ConstraintSet};
use dnacodec::corpus::{image_256, POEM};
use dnacodec::decimal::parse_decimal;
use dnacodec::huffman::{build_codebook, compress};
use dnacodec::mapping::{
    average_bit_error, gray_sequence_48, random_table_average_bit_error, MappingTable,
    SubstitutionMatrix,
};
use dnacodec::pipeline::{decode_bits, encode_bits, EncodeOptions};
use dnacodec::sequence::{max_run_length, Nucleotide, Nucleotide::*};
use num_rational::{BigRational, Ratio};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(id: u32, name: &str, pass: bool, detail: &str) {
    println!(
        "criterion {id} [{name}]: {} -- {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {id} failed: {detail}");
}

fn dna(s: &str) -> Vec<Nucleotide> {
    s.chars()
        .map(|c| Nucleotide::from_char(c).unwrap())
        .collect()
}

// Published mapping table, read column by column.
const PUBLISHED_MAPPING: [(&str, u32); 48] = [
    ("AAC", 0),
    ("AAT", 1),
    ("GAT", 3),
    ("TAT", 2),
    ("TGT", 6),
    ("CGT", 7),
    ("AGT", 5),
    ("AGC", 4),
    ("ATC", 12),
    ("ATA", 13),
    ("GTA", 15),
    ("GCA", 14),
    ("ACA", 10),
    ("ACG", 11),
    ("ACT", 9),
    ("GCT", 25),
    ("TCT", 27),
    ("CCT", 26),
    ("CCA", 30),
    ("CCG", 31),
    ("CAG", 29),
    ("CAT", 28),
    ("CAC", 20),
    ("TAC", 21),
    ("TGC", 23),
    ("TTC", 22),
    ("TTA", 18),
    ("TCA", 19),
    ("TCG", 17),
    ("TAG", 16),
    ("AAG", 24),
    ("GAG", 8),
    ("GTG", 40),
    ("ATG", 42),
    ("TTG", 43),
    ("CTG", 41),
    ("CTA", 45),
    ("CGA", 47),
    ("AGA", 46),
    ("GGA", 44),
    ("TGA", 36),
    ("CGC", 37),
    ("CTC", 39),
    ("GTC", 38),
    ("GAC", 34),
    ("GGC", 35),
    ("GGT", 33),
    ("GCG", 32),
];

// Published Gray ordering of the 48 symbols.
const PUBLISHED_GRAY: [&str; 48] = [
    "000000", "000001", "000011", "000010", "000110", "000111", "000101", "000100", "001100",
    "001101", "001111", "001110", "001010", "001011", "001001", "011001", "011011", "011010",
    "011110", "011111", "011101", "011100", "010100", "010101", "010111", "010110", "010010",
    "010011", "010001", "010000", "011000", "001000", "101000", "101010", "101011", "101001",
    "101101", "101111", "101110", "101100", "100100", "100101", "100111", "100110", "100010",
    "100011", "100001", "100000",
];

#[test]
fn criterion_1_mapping_table_fidelity() {
    let start = Instant::now();
    let table = MappingTable::canonical();
    let mismatched: Vec<_> = PUBLISHED_MAPPING
        .iter()
        .filter(|(t, s)| table.tuple(*s as usize) != dna(t).as_slice())
        .collect();

    let gray = gray_sequence_48();
    let published: Vec<u32> = PUBLISHED_GRAY
        .iter()
        .map(|b| u32::from_str_radix(b, 2).unwrap())
        .collect();
    let gray_ok = gray.codes() == published.as_slice()
        && published
            .windows(2)
            .all(|w| (w[0] ^ w[1]).count_ones() == 1);
    // the published table pairs the i-th chain tuple with the i-th Gray code
    let chain_ok = PUBLISHED_MAPPING
        .iter()
        .zip(&published)
        .all(|((_, s), g)| s == g);

    let mut worst = 0;
    let mut pair = Vec::with_capacity(6);
    for a in 0..48 {
        for b in 0..48 {
            pair.clear();
            pair.extend_from_slice(table.tuple(a));
            pair.extend_from_slice(table.tuple(b));
            worst = worst.max(max_run_length(&pair));
        }
    }
    let elapsed = start.elapsed();
    verdict(
        1,
        "mapping table",
        mismatched.is_empty() && gray_ok && chain_ok && worst <= 3 && elapsed < Duration::from_secs(1),
        &format!(
            "{} of 48 entries differ, gray ok={gray_ok}, chain ok={chain_ok}, max run over 48x48 = {worst}, {elapsed:?}",
            mismatched.len()
        ),
    );
}

#[test]
fn criterion_2_bit_error_statistics() {
    let start = Instant::now();
    let report = average_bit_error(&MappingTable::canonical(), &SubstitutionMatrix::measured());
    let published = [
        (G, A, 2.0),
        (G, T, 2.357),
        (C, A, 2.214),
        (C, T, 2.357),
        (T, C, 2.357),
        (A, G, 2.0),
        (T, A, 2.5),
        (A, T, 2.5),
        (T, G, 2.357),
        (G, C, 2.857),
        (A, C, 2.214),
        (C, G, 2.857),
    ];
    let worst_pair = published
        .iter()
        .map(|&(f, t, v)| {
            let mean = report.pair(f, t).unwrap().mean().unwrap();
            (mean.to_f64().unwrap() - v).abs()
        })
        .fold(0.0, f64::max);
    let random = random_table_average_bit_error(48);
    let random = *random.numer() as f64 / *random.denom() as f64;
    let reduction = 100.0 * (random - report.overall) / random;
    let elapsed = start.elapsed();
    let pass = (report.overall - 2.3455).abs() <= 0.0005
        && worst_pair <= 0.001
        && (random - 2.9504).abs() <= 0.0001
        && (reduction - 20.5).abs() <= 0.1
        && elapsed < Duration::from_secs(1);
    verdict(
        2,
        "bit error",
        pass,
        &format!(
            "greedy {:.6}, worst per-pair deviation {worst_pair:.4}, random {random:.6}, reduction {reduction:.3}%, {elapsed:?}",
            report.overall
        ),
    );
}

#[test]
fn criterion_3_block_distribution() {
    let start = Instant::now();
    let table = MappingTable::canonical();
    // direct count, independent of the analysis module
    let mut oracle = [0u64; 7];
    for v in 0..2048usize {
        let gc = [v / 48, v % 48]
            .iter()
            .flat_map(|&s| table.tuple(s).iter())
            .filter(|b| matches!(b, C | G))
            .count();
        oracle[gc] += 1;
    }
    let dist = symbol_gc_distribution(&table).unwrap();
    let expected = [16, 148, 487, 724, 505, 152, 16];
    let elapsed = start.elapsed();
    verdict(
        3,
        "block GC distribution",
        dist.counts == expected
            && oracle == expected
            && dist.total == 2048
            && elapsed < Duration::from_secs(1),
        &format!("numerators {:?} / {}, {elapsed:?}", dist.counts, dist.total),
    );
}

#[test]
fn criterion_4_min_alpha_table() {
    let start = Instant::now();
    let dist = symbol_gc_distribution(&MappingTable::canonical()).unwrap();
    let eps = parse_decimal("1e-4").unwrap();
    let step = default_grid_step();
    let published: [(u32, [&str; 5]); 2] = [
        (4, ["0.07", "0.06", "0.05", "0.048", "0.044"]),
        (8, ["0.04", "0.04", "0.03", "0.028", "0.027"]),
    ];
    let ns = [100usize, 150, 200, 250, 300];
    let tolerance = parse_decimal("0.001").unwrap();
    let mut misses = Vec::new();
    let mut grid = Vec::new();
    for (iters, row) in published {
        for (&n, want) in ns.iter().zip(row) {
            let got: BigRational = min_alpha(&dist, n, iters, &eps, &step).unwrap();
            let want = parse_decimal(want).unwrap();
            let diff = if got > want {
                &got - &want
            } else {
                &want - &got
            };
            grid.push(format!("I={iters},n={n}:{}", got.to_f64().unwrap()));
            if diff > tolerance {
                misses.push(format!(
                    "I={iters} n={n} got {} want {}",
                    got.to_f64().unwrap(),
                    want.to_f64().unwrap()
                ));
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        4,
        "minimum alpha grid",
        misses.is_empty() && elapsed < Duration::from_secs(10),
        &format!(
            "{} of 10 cells within 0.001 [{}]; misses: {:?}; {elapsed:?}",
            10 - misses.len(),
            grid.join(" "),
            misses
        ),
    );
}

#[test]
fn criterion_5_density_formulas() {
    let d3 = info_density(3).unwrap();
    let d4 = info_density(4).unwrap();
    let block = Ratio::new(BLOCK_BITS as u64, BLOCK_NT as u64);
    let eff = coding_efficiency(3, CHANNEL_CAPACITY).unwrap();

    // an encoded full strand really carries 11 bits per 6 payload nt
    let params = CodecParams::default();
    let data: Bits = (0..params.chunk_bits()).map(|i| i % 3 == 0).collect();
    let archive = encode(&data, &params, &MappingTable::canonical(), &Randomizer).unwrap();
    let payload_nt = archive.strands[0].len() - 1;
    let measured = Ratio::new(data.len() as u64, payload_nt as u64);

    let pass = (d3 - 1.8617).abs() <= 1e-4
        && (d4 - 1.8962).abs() <= 1e-4
        && block == Ratio::new(11, 6)
        && measured == block
        && (eff - 0.94).abs() <= 0.005;
    verdict(
        5,
        "density formulas",
        pass,
        &format!(
            "m=3 {d3:.5}, m=4 {d4:.5}, block {block} (measured {measured}), efficiency {:.2}%",
            eff * 100.0
        ),
    );
}

fn random_length(rng: &mut ChaCha8Rng, i: usize) -> usize {
    const MIB_BITS: usize = 8 << 20;
    match i {
        0 => 1,
        1 | 2 => MIB_BITS,
        _ => {
            // log-uniform over 1 bit .. 64 KiB
            let exp = rng.gen_range(0.0..19.0f64);
            (2f64.powf(exp) as usize).clamp(1, MIB_BITS)
        }
    }
}

#[test]
fn criterion_6_round_trip() {
    let start = Instant::now();
    let table = MappingTable::canonical();
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce97);
    let alpha = Alpha::new(1, 20).unwrap();
    let methods = [
        CodecParams::block11(alpha, 198).unwrap(),
        CodecParams::whole_stream(3, alpha, 198).unwrap(),
    ];
    let cases = 1000;
    let mut failures = Vec::new();
    let mut total_bits = 0usize;
    for i in 0..cases {
        let len = random_length(&mut rng, i);
        total_bits += len;
        let data: Bits = if rng.gen_bool(0.3) {
            // low-entropy input so Huffman has something to do
            (0..len).map(|_| rng.gen_bool(0.1)).collect()
        } else {
            let bytes: Vec<u8> = (0..len.div_ceil(8)).map(|_| rng.gen()).collect();
            from_bytes(&bytes)[..len].to_bitvec()
        };
        let options = EncodeOptions {
            params: methods[i % 2].clone(),
            source_symbol_bits: match (i / 2) % 3 {
                0 => None,
                1 => Some(16),
                _ => Some(rng.gen_range(1..=12)),
            },
        };
        let outcome =
            encode_bits(&data, &options, &table, &Randomizer).and_then(|(archive, _, _)| {
                assert!(archive.violations().unwrap().is_empty());
                decode_bits(&archive, &table, &Randomizer)
            });
        match outcome {
            Ok(back) if back == data => {}
            Ok(_) => failures.push(format!("case {i}: {len} bits differ")),
            Err(e) => failures.push(format!("case {i}: {len} bits: {e}")),
        }
    }
    verdict(
        6,
        "round trip",
        failures.is_empty(),
        &format!(
            "{} of {cases} inputs ({} Mbit total, 1 bit to 1 MiB, both methods, with/without Huffman) restored; failures {:?}; {:?}",
            cases - failures.len(),
            total_bits / 1_000_000,
            failures,
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_7_constraint_compliance() {
    let start = Instant::now();
    let table = MappingTable::canonical();
    let params = CodecParams::default().with_reflow(false);
    assert_eq!((params.n, params.max_iterations), (198, 4));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let trials = 100_000;
    let mut log = RunLog {
        max_iterations: params.max_iterations,
        attempts: Vec::with_capacity(trials),
    };
    let mut noncompliant = 0;
    let constraints: &ConstraintSet = params.constraints();
    for chunk in 0..trials {
        let bits: Bits = (0..params.chunk_bits())
            .map(|_| rng.gen::<bool>())
            .collect();
        let out = encode_chunk(&bits, params.full_units(), &params, &table, &Randomizer).unwrap();
        if let Some(s) = &out.strand {
            let v = dnacodec::constraints::verify(s, 1..s.len(), constraints).unwrap();
            if !v.is_pass() || s.len() != 199 {
                noncompliant += 1;
            }
        }
        log.attempts.push(StrandAttempt {
            chunk,
            payload_nt: 198,
            passed_at: out.strand.map(|_| out.r + 1),
        });
    }
    let h = iteration_histogram(&log);
    let failure_rate = h.exhausted as f64 / trials as f64;
    let first = h.first_iteration_rate();
    let decays = h.counts.windows(2).all(|w| w[0] >= w[1]);
    let elapsed = start.elapsed();
    verdict(
        7,
        "constraint compliance",
        noncompliant == 0 && failure_rate <= 1e-3 && first >= 0.85 && decays && elapsed < Duration::from_secs(120),
        &format!(
            "histogram {:?}, exhausted {}, failure rate {failure_rate:.2e}, first-iteration {:.2}%, {elapsed:?}",
            h.counts,
            h.exhausted,
            first * 100.0
        ),
    );
}

#[test]
fn criterion_8_error_containment() {
    let table = MappingTable::canonical();
    let params = CodecParams::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let injections = 10_000;
    let (mut decodable, mut rejected, mut worst, mut total) = (0u64, 0u64, 0usize, 0usize);
    let mut archive = None;
    let mut data = Bits::new();
    for i in 0..injections {
        if i % 100 == 0 {
            data = (0..rng.gen_range(500..5000))
                .map(|_| rng.gen::<bool>())
                .collect();
            archive = Some(encode(&data, &params, &table, &Randomizer).unwrap());
        }
        let mut corrupted = archive.clone().unwrap();
        let s = rng.gen_range(0..corrupted.strands.len());
        let mut bases = corrupted.strands[s].bases().to_vec();
        let pos = rng.gen_range(1..bases.len());
        let old = bases[pos];
        bases[pos] = loop {
            let b = Nucleotide::ALL[rng.gen_range(0..4)];
            if b != old {
                break b;
            }
        };
        corrupted.strands[s] = bases.into();
        match decode_payload(&corrupted, &table, &Randomizer) {
            Ok(out) => {
                decodable += 1;
                let d = hamming(&out, &data);
                worst = worst.max(d);
                total += d;
            }
            Err(e) => {
                assert!(e.is_corruption(), "{e}");
                rejected += 1;
            }
        }
    }
    let mean = total as f64 / decodable as f64;
    let (exact_worst, exact_uniform, exact_weighted) = exhaustive_block_damage(&table);
    verdict(
        8,
        "error containment",
        worst <= 11 && exact_worst <= 11 && mean <= 3.0,
        &format!(
            "{decodable} decodable, {rejected} rejected as corrupt; sampled worst {worst} bits, sampled mean {mean:.4} bits; \
             exhaustive over all blocks: worst {exact_worst}, mean {exact_uniform:.4} (uniform substitutions), \
             {exact_weighted:.4} (weighted by measured substitution rates)"
        ),
    );
}

/// Every single substitution of every block image: worst and mean damage
/// among those that still decode.
fn exhaustive_block_damage(table: &MappingTable) -> (usize, f64, f64) {
    let subs = SubstitutionMatrix::measured();
    let (mut worst, mut sum, mut count, mut wsum, mut wcount) = (0, 0.0, 0.0, 0.0, 0.0);
    for v in 0..2048u64 {
        let mut bits = Bits::new();
        dnacodec::bits::push_u64(&mut bits, v, BLOCK_BITS);
        let image = dnacodec::codec::map_block11(&bits, table).unwrap();
        for pos in 0..BLOCK_NT {
            for to in Nucleotide::ALL {
                let from = image.bases()[pos];
                if to == from {
                    continue;
                }
                let mut bases = image.bases().to_vec();
                bases[pos] = to;
                if let Ok(out) = dnacodec::codec::unmap_block11(&bases, table) {
                    let d = hamming(&out, &bits);
                    let w = subs.prob(from, to);
                    worst = worst.max(d);
                    sum += d as f64;
                    count += 1.0;
                    wsum += w * d as f64;
                    wcount += w;
                }
            }
        }
    }
    (worst, sum / count, wsum / wcount)
}

#[test]
fn criterion_9_source_coding_experiment() {
    let table = MappingTable::canonical();
    let poem = from_bytes(POEM.as_bytes());
    let book = build_codebook(&poem, 16).unwrap();
    let compressed = compress(&poem, &book).unwrap().len();

    let alpha = Alpha::new(1, 20).unwrap();
    let density = |params: CodecParams, k: Option<u32>, data: &Bits| {
        let options = EncodeOptions {
            params,
            source_symbol_bits: k,
        };
        let (archive, _, report) = encode_bits(data, &options, &table, &Randomizer).unwrap();
        assert_eq!(&decode_bits(&archive, &table, &Randomizer).unwrap(), data);
        report.density
    };
    let whole = density(
        CodecParams::whole_stream(3, alpha, 198).unwrap(),
        Some(16),
        &poem,
    );
    let block = density(CodecParams::block11(alpha, 198).unwrap(), Some(16), &poem);
    let image = from_bytes(&image_256());
    let image_density = density(CodecParams::block11(alpha, 198).unwrap(), None, &image);

    let within = |got: f64, want: f64| (got - want).abs() <= 0.05 * want;
    let pass = within(compressed as f64, 1618.0)
        && within(whole, 4.48)
        && within(block, 4.39)
        && image_density >= 1.80;
    assert_eq!(Method::default(), Method::Block11);
    verdict(
        9,
        "source coding experiment",
        pass,
        &format!(
            "poem {} -> {compressed} bits, whole_stream {whole:.4} bits/nt, block11 {block:.4} bits/nt, 256x256 image uncoded {image_density:.4} bits/nt",
            poem.len()
        ),
    );
}
