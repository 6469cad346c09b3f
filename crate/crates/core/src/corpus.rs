//! Bundled test inputs: a short English text and synthetic grayscale images.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// Rabindranath Tagore, "Where the Mind is Without Fear": eleven lines joined
/// without separators, 490 ASCII characters.
pub const POEM: &str = concat!(
    "Where the mind is without fear and the head is held high",
    "Where knowledge is free",
    "Where the world has not been broken up into fragments",
    "By narrow domestic walls",
    "Where words come out from the depth of truth",
    "Where tireless striving stretches its arms towards perfection",
    "Where the clear stream of reason has not lost its way",
    "Into the dreary desert sand of dead habit",
    "Where the mind is led forward by thee",
    "Into ever-widening thought and action",
    "Into that heaven of freedom, my Father, let my country awake.",
);

pub const IMAGE_SEED: u64 = 0x0d0a_5eed;

/// 8-bit grayscale raw pixels, row-major: smooth low-frequency shading plus
/// pseudorandom noise, fully determined by `seed`.
pub fn grayscale_image(width: usize, height: usize, seed: u64) -> Vec<u8> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let waves: Vec<(f64, f64, f64, f64)> = (0..4)
        .map(|_| {
            (
                rng.gen_range(0.005..0.05),
                rng.gen_range(0.005..0.05),
                rng.gen_range(0.0..std::f64::consts::TAU),
                rng.gen_range(15.0..35.0),
            )
        })
        .collect();
    let mut out = Vec::with_capacity(width * height);
    for y in 0..height {
        for x in 0..width {
            let shade: f64 = waves
                .iter()
                .map(|&(fx, fy, phase, amp)| amp * (fx * x as f64 + fy * y as f64 + phase).sin())
                .sum();
            let noise = rng.gen_range(-12.0..12.0);
            out.push((128.0 + shade + noise).round().clamp(0.0, 255.0) as u8);
        }
    }
    out
}

pub fn image_256() -> Vec<u8> {
    grayscale_image(256, 256, IMAGE_SEED)
}

pub fn image_512() -> Vec<u8> {
    grayscale_image(512, 512, IMAGE_SEED + 1)
}
