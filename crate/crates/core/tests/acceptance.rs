//! Exit criteria for the engine. Each test prints one PASS/FAIL line.
//!
//! Run with `cargo test -p wavebp --test acceptance -- --nocapture` to see the
//! report lines.

use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wavebp::io::{decode_field, encode_field, read_field, write_field};
use wavebp::propagation::{is_propagating, propagate_spectrum};
use wavebp::{
    backpropagate, direct_field, dispersion_residual, forward_spectrum, fringe_spacing, green_born,
    green_kernel, inverse_spectrum, locate_sources, plane_wave_field, propagate, sweep,
    AngularSpectrum, Complex64, EvanescentPolicy, GridSpec, MediumParams, PlaneWave, PointSource,
    SourceSet, Wavefield,
};

const L: f64 = 1.0;

fn medium() -> MediumParams {
    MediumParams::new(L, 343.0).unwrap()
}

fn report(id: u32, name: &str, pass: bool, detail: String, elapsed: Duration, budget: Duration) {
    let within = elapsed <= budget;
    println!(
        "criterion {id} [{name}]: {} ({detail}; {:.3} s, budget {:.0} s)",
        if pass && within { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs_f64()
    );
    assert!(pass, "criterion {id} failed: {detail}");
    assert!(within, "criterion {id} exceeded its time budget");
}

fn rel_rms(a: &[Complex64], b: &[Complex64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
    (num / den).sqrt()
}

fn window(field: &Wavefield, i0: usize, j0: usize, w: usize, h: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(w * h);
    for j in j0..j0 + h {
        for i in i0..i0 + w {
            out.push(field.get(i, j));
        }
    }
    out
}

/// Centers `field` in a `size` x `size` grid of zeros with the same pitch.
fn zero_padded(field: &Wavefield, size: usize) -> Wavefield {
    let g = field.grid();
    let (ox, oy) = ((size - g.nx()) / 2, (size - g.ny()) / 2);
    let grid = GridSpec::new(
        size,
        size,
        g.dx(),
        g.dy(),
        g.origin_x() - ox as f64 * g.dx(),
        g.origin_y() - oy as f64 * g.dy(),
        g.z(),
    )
    .unwrap();
    let mut data = vec![Complex64::new(0.0, 0.0); size * size];
    for j in 0..g.ny() {
        for i in 0..g.nx() {
            data[(j + oy) * size + i + ox] = field.get(i, j);
        }
    }
    Wavefield::new(grid, *field.medium(), data).unwrap()
}

fn random_field(grid: GridSpec, rng: &mut impl Rng) -> Wavefield {
    let data = (0..grid.len())
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    Wavefield::new(grid, medium(), data).unwrap()
}

/// Random field whose spectrum is supported inside the propagating disk.
fn random_band_limited(grid: GridSpec, rng: &mut impl Rng) -> Wavefield {
    let m = medium();
    let data = wavebp::frequency_grid(&grid)
        .into_iter()
        .map(|(fx, fy)| {
            if is_propagating(fx, fy, &m) {
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    inverse_spectrum(&AngularSpectrum::new(grid, m, data).unwrap())
}

#[test]
fn criterion_1_oracle_equivalence() {
    let start = Instant::now();
    let (n, d) = (256, L / 2.0);
    let (z1, z2) = (50.0 * L, 70.0 * L);
    let source = PointSource::new(0.0, 0.0, 0.0, Complex64::new(1.0, 0.0)).unwrap();
    let set = SourceSet::with_sources(medium(), vec![source]);

    let screen1 = GridSpec::centered(n, n, d, d, z1).unwrap();
    let recording = direct_field(&set, &screen1).unwrap();
    let spectral = propagate(&recording, z2 - z1, EvanescentPolicy::Truncate).unwrap();
    let oracle = direct_field(&set, &screen1.with_z(z2).unwrap()).unwrap();

    let err = rel_rms(
        &window(&spectral, n / 4, n / 4, n / 2, n / 2),
        &window(&oracle, n / 4, n / 4, n / 2, n / 2),
    );

    // Diagnostic only: the same recording embedded in a 2x zero-padded grid
    // removes the periodic wrap of the unpadded DFT.
    let padded = zero_padded(&recording, 2 * n);
    let spectral_padded = propagate(&padded, z2 - z1, EvanescentPolicy::Truncate).unwrap();
    let oracle_padded = direct_field(&set, &padded.grid().with_z(z2).unwrap()).unwrap();
    let off = n / 2 + n / 4;
    let err_padded = rel_rms(
        &window(&spectral_padded, off, off, n / 2, n / 2),
        &window(&oracle_padded, off, off, n / 2, n / 2),
    );

    report(
        1,
        "oracle equivalence",
        err <= 0.05 && spectral.grid().z() == z2,
        format!("relative RMS {err:.3e} <= 5e-2; with 2x zero padding {err_padded:.3e}"),
        start.elapsed(),
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_2_round_trip_identity() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let grid = GridSpec::centered(128, 128, L / 2.0, L / 2.0, 0.0).unwrap();
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let f = random_band_limited(grid, &mut rng);
        let d = 100.0 * L * (1.0 - rng.gen::<f64>());
        let there = propagate(&f, d, EvanescentPolicy::Truncate).unwrap();
        let back = backpropagate(&there, d, EvanescentPolicy::Truncate).unwrap();
        worst = worst.max(rel_rms(back.data(), f.data()));
    }
    report(
        2,
        "round-trip identity",
        worst <= 1e-10,
        format!("worst relative RMS {worst:.3e} <= 1e-10"),
        start.elapsed(),
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_3_reciprocity_and_de_moivre() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let m = medium();
    let mut even = true;
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let r = rng.gen_range(L / 100.0..=100.0 * L);
        let h = green_kernel(r, &m).unwrap();
        even &= h == green_kernel(-r, &m).unwrap();
        let split = green_born(r, &m).unwrap() + green_born(-r, &m).unwrap();
        worst = worst.max((split - h).norm());
    }
    report(
        3,
        "reciprocity and De Moivre split",
        even && worst <= 1e-12,
        format!("h(r) == h(-r): {even}; worst |hG(r)+hG(-r)-h(r)| {worst:.3e} <= 1e-12"),
        start.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_4_fringe_geometry() {
    let start = Instant::now();
    let m = medium();
    let (sx, sy) = fringe_spacing(FRAC_PI_4, &m);
    let expected = SQRT_2 * L;
    let rel = |s: Option<f64>| s.map_or(f64::INFINITY, |v| (v - expected).abs() / expected);
    let (ex, ey) = (rel(sx.value()), rel(sy.value()));

    let n = 256;
    let dx = SQRT_2 * L / 8.0;
    let screen = GridSpec::new(n, 1, dx, 1.0, 0.0, 0.0, 0.0).unwrap();
    let pw = PlaneWave::new(FRAC_PI_4, Complex64::new(1.0, 0.0), m).unwrap();
    let spec = forward_spectrum(&plane_wave_field(&pw, &screen).unwrap());
    let argmax = (0..n)
        .max_by(|&a, &b| spec.get(a, 0).norm().total_cmp(&spec.get(b, 0).norm()))
        .unwrap();
    // nearest bin to sin(θ)/L on the DFT lattice 1/(n dx)
    let nearest = ((FRAC_PI_4.sin() / L) * n as f64 * dx).round() as usize;

    report(
        4,
        "fringe geometry",
        ex <= 1e-15 && ey <= 1e-15 && argmax == nearest,
        format!(
            "spacing rel err ({ex:.1e}, {ey:.1e}) <= 1e-15; argmax bin {argmax}, nearest {nearest}"
        ),
        start.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_5_dispersion_shell() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let m = medium();
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let theta = rng.gen_range(0.0..=PI);
        let phi = rng.gen_range(0.0..2.0 * PI);
        let (fx, fy, fz) = (
            theta.sin() * phi.cos() / L,
            theta.sin() * phi.sin() / L,
            theta.cos() / L,
        );
        worst = worst.max(dispersion_residual(fx, fy, fz, &m).abs());
    }
    let tol = 1e-15 / (L * L);
    report(
        5,
        "dispersion shell",
        worst <= tol,
        format!("worst residual {worst:.3e} <= {tol:.0e}"),
        start.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_6_low_pass() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let m = medium();
    // dx = L/4 puts most bins outside the disk
    let grid = GridSpec::centered(96, 80, L / 4.0, L / 4.0, 0.0).unwrap();
    let mut outside_energy = 0.0f64;
    let mut worst_parseval = 0.0f64;
    let mut worst_leak = 0.0f64;
    for _ in 0..5 {
        let f = random_field(grid, &mut rng);
        let dz = rng.gen_range(-50.0..50.0);
        let spec =
            propagate_spectrum(&forward_spectrum(&f), dz, EvanescentPolicy::Truncate).unwrap();
        let freqs = spec.frequencies();
        for (v, (fx, fy)) in spec.data().iter().zip(&freqs) {
            if !is_propagating(*fx, *fy, &m) {
                outside_energy += v.norm_sqr();
            }
        }
        let out = inverse_spectrum(&spec);
        let spec_energy: f64 =
            spec.data().iter().map(|v| v.norm_sqr()).sum::<f64>() / grid.len() as f64;
        worst_parseval = worst_parseval.max((out.energy() - spec_energy).abs() / spec_energy);

        // re-analysing the output only sees rounding-level leakage
        let again = forward_spectrum(&out);
        let leak: f64 = again
            .data()
            .iter()
            .zip(&freqs)
            .filter(|(_, (fx, fy))| !is_propagating(*fx, *fy, &m))
            .map(|(v, _)| v.norm_sqr())
            .sum();
        let total: f64 = again.data().iter().map(|v| v.norm_sqr()).sum();
        worst_leak = worst_leak.max(leak / total);
    }
    report(
        6,
        "low-pass behaviour",
        outside_energy == 0.0 && worst_parseval <= 1e-10,
        format!(
            "out-of-disk spectral energy {outside_energy:e} == 0; Parseval rel err {worst_parseval:.3e} <= 1e-10; re-analysis leakage {worst_leak:.1e}"
        ),
        start.elapsed(),
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_7_end_to_end_reconstruction() {
    let start = Instant::now();
    let (n, d) = (256, L / 2.0);
    let grid = GridSpec::centered(n, n, d, d, 0.0).unwrap();
    // 16 cells apart laterally, 40 L and 60 L in front of the screen.
    // Amplitudes scale with depth so both deliver the same on-axis amplitude
    // to the screen.
    let truth = [
        PointSource::new(-8.0 * d, 0.0, -40.0 * L, Complex64::new(40.0, 0.0)).unwrap(),
        PointSource::new(8.0 * d, 0.0, -60.0 * L, Complex64::new(60.0, 0.0)).unwrap(),
    ];
    let recording =
        direct_field(&SourceSet::with_sources(medium(), truth.to_vec()), &grid).unwrap();

    let steps = 64;
    let (z_lo, z_hi) = (-70.0 * L, -30.0 * L);
    let targets: Vec<f64> = (0..steps)
        .map(|k| z_lo + (z_hi - z_lo) * k as f64 / (steps - 1) as f64)
        .collect();
    let z_step = (z_hi - z_lo) / (steps - 1) as f64;
    let stack = sweep(&recording, &targets, EvanescentPolicy::Truncate).unwrap();
    let found = locate_sources(&stack, 0.5).unwrap();

    let matched = truth.iter().all(|s| {
        found.iter().any(|e| {
            (e.x - s.x).abs() <= d && (e.y - s.y).abs() <= d && (e.z - s.z).abs() <= z_step
        })
    });
    let positions: Vec<String> = found
        .iter()
        .map(|e| format!("({:.2}, {:.2}, {:.2})", e.x, e.y, e.z))
        .collect();
    report(
        7,
        "end-to-end reconstruction",
        found.len() == 2 && matched,
        format!("{} estimates {}", found.len(), positions.join(" ")),
        start.elapsed(),
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_8_group_law() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let grid = GridSpec::centered(64, 48, L / 2.0, L / 2.0, 0.0).unwrap();
    let p = EvanescentPolicy::Truncate;
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let f = random_field(grid, &mut rng);
        let a = rng.gen_range(-100.0..100.0);
        let b = rng.gen_range(-100.0..100.0);
        let two_steps = propagate(&propagate(&f, a, p).unwrap(), b, p).unwrap();
        let one_step = propagate(&f, a + b, p).unwrap();
        worst = worst.max(rel_rms(two_steps.data(), one_step.data()));
    }
    report(
        8,
        "group law",
        worst <= 1e-10,
        format!("worst relative RMS {worst:.3e} <= 1e-10"),
        start.elapsed(),
        Duration::from_secs(5),
    );
}

fn run_cli(args: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_wavebp"))
        .args(args)
        .output()
        .expect("failed to launch wavebp")
        .status
        .code()
        .unwrap_or(-1)
}

#[test]
fn criterion_9_file_io() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let dir = tempfile::tempdir().unwrap();
    let mut exact = true;
    for k in 0..50 {
        let (nx, ny) = match k {
            0 => (1, 1),
            1 => (1, 17),
            2 => (23, 1),
            _ => (rng.gen_range(1..40), rng.gen_range(1..40)),
        };
        let grid = GridSpec::new(
            nx,
            ny,
            rng.gen_range(1e-3..2.0),
            rng.gen_range(1e-3..2.0),
            rng.gen_range(-100.0..100.0),
            rng.gen_range(-100.0..100.0),
            rng.gen_range(-100.0..100.0),
        )
        .unwrap();
        let m = MediumParams::new(rng.gen_range(1e-7..10.0), rng.gen_range(1.0..3e8)).unwrap();
        let data = (0..nx * ny)
            .map(|_| Complex64::new(rng.gen::<f64>() * 1e3 - 5e2, rng.gen::<f64>() * 1e-3))
            .collect();
        let f = Wavefield::new(grid, m, data).unwrap();
        let path = dir.path().join(format!("f{k}.wfld"));
        write_field(&f, &path).unwrap();
        let back = read_field(&path).unwrap();
        let same_bits = back
            .data()
            .iter()
            .zip(f.data())
            .all(|(a, b)| a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits());
        exact &= same_bits && back.grid() == f.grid() && back.medium() == f.medium();
        exact &= encode_field(&back) == std::fs::read(&path).unwrap();
    }

    let good = dir.path().join("f10.wfld");
    let bytes = std::fs::read(&good).unwrap();
    let mut bad_magic = bytes.clone();
    bad_magic[0..4].copy_from_slice(b"XXXX");
    let magic_path = dir.path().join("magic.wfld");
    std::fs::write(&magic_path, &bad_magic).unwrap();
    let truncated_path = dir.path().join("trunc.wfld");
    std::fs::write(&truncated_path, &bytes[..bytes.len() - 3]).unwrap();

    let lib_errors =
        decode_field(&bad_magic).is_err() && decode_field(&bytes[..bytes.len() - 3]).is_err();
    let p = |path: &Path| path.to_str().unwrap().to_string();
    let codes = [
        run_cli(&["info", "--in", &p(&magic_path)]),
        run_cli(&["info", "--in", &p(&truncated_path)]),
        run_cli(&[
            "prop",
            "--in",
            &p(&truncated_path),
            "--dz",
            "1",
            "--out",
            &p(&dir.path().join("o.wfld")),
        ]),
    ];
    let good_code = run_cli(&["info", "--in", &p(&good)]);

    report(
        9,
        "file I/O",
        exact && lib_errors && codes.iter().all(|&c| c == 3) && good_code == 0,
        format!("bit-exact round trips: {exact}; corrupted-file exit codes {codes:?}, valid file {good_code}"),
        start.elapsed(),
        Duration::from_secs(2),
    );
}
