//! Acceptance checks, one line of output per criterion.
//!
//! Run with `cargo test -p trimask-cli --test acceptance`. Exits non-zero if
//! any criterion fails.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use image::{Rgb, RgbImage};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use trimask_core::{
    decode_png, encode_png, iou, mask_from_clicks, miou, pixel_accuracy, rasterize_oracle,
    rasterize_scanline, BinaryMask, Point2, RasterConfig, Session, SessionError, SessionEvent,
    SessionState, Triangle,
};
use trimask_service::{Server, ServiceConfig};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn trimask() -> Command {
    Command::new(env!("CARGO_BIN_EXE_trimask"))
}

fn random_triangle(rng: &mut StdRng, w: u32, h: u32) -> Triangle {
    // Pixel centers of a one-pixel-wide image are always collinear.
    let snap = w > 1 && h > 1 && rng.random_bool(0.5);
    loop {
        let mut pt = || {
            let x = rng.random_range(0.0..f64::from(w));
            let y = rng.random_range(0.0..f64::from(h));
            if snap {
                Point2::new(x.floor() + 0.5, y.floor() + 0.5)
            } else {
                Point2::new(x, y)
            }
        };
        let (a, b, c) = (pt(), pt(), pt());
        if let Ok(t) = Triangle::new(a, b, c) {
            return t;
        }
    }
}

fn random_scene(rng: &mut StdRng) -> (RasterConfig, Triangle) {
    let (w, h) = (rng.random_range(1..=128), rng.random_range(1..=128));
    (RasterConfig::new(w, h).unwrap(), random_triangle(rng, w, h))
}

fn oracle_equivalence() -> Check {
    let mut rng = StdRng::seed_from_u64(1);
    let start = Instant::now();
    let (mut mismatches, mut pixels) = (0usize, 0usize);
    for _ in 0..1000 {
        let (cfg, t) = random_scene(&mut rng);
        let a = rasterize_scanline(&t, &cfg);
        let b = rasterize_oracle(&t, &cfg);
        pixels += a.as_slice().len();
        mismatches += a
            .as_slice()
            .iter()
            .zip(b.as_slice())
            .filter(|(x, y)| x != y)
            .count();
    }
    let elapsed = start.elapsed();
    ensure!(mismatches == 0, "{mismatches} mismatching pixels");
    ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    Ok(format!(
        "1000 triangles, {pixels} pixels, 0 mismatches in {elapsed:.2?}"
    ))
}

fn vertex_order_invariance() -> Check {
    let mut rng = StdRng::seed_from_u64(2);
    for n in 0..200 {
        let (cfg, t) = random_scene(&mut rng);
        let [a, b, c] = t.vertices();
        let base = encode_png(&rasterize_scanline(&t, &cfg));
        for (u, v, x) in [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
            let perm = Triangle::new(u, v, x).unwrap();
            ensure!(
                encode_png(&rasterize_scanline(&perm, &cfg)) == base,
                "triangle {n} differs under permutation"
            );
        }
    }
    Ok("200 triangles x 6 orderings byte-identical".into())
}

fn area_consistency() -> Check {
    let mut rng = StdRng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for n in 0..500 {
        // Keep the triangle inside the image so its full area is rasterized.
        let (cfg, t) = random_scene(&mut rng);
        let count = rasterize_scanline(&t, &cfg).count_foreground() as f64;
        let slack = t.perimeter() + 3.0;
        let err = (count - t.area()).abs();
        ensure!(
            err <= slack,
            "triangle {n}: |{count} - {}| > {slack}",
            t.area()
        );
        worst = worst.max(err / slack);
    }
    Ok(format!(
        "500 triangles, worst error at {:.1}% of bound",
        worst * 100.0
    ))
}

fn clicked_pixel_coverage() -> Check {
    let mut rng = StdRng::seed_from_u64(4);
    let mut done = 0;
    while done < 200 {
        let (w, h) = (rng.random_range(2..=256u32), rng.random_range(2..=256u32));
        let clicks: [(i64, i64); 3] = std::array::from_fn(|_| {
            (
                i64::from(rng.random_range(0..w)),
                i64::from(rng.random_range(0..h)),
            )
        });
        let Ok(mask) = mask_from_clicks(clicks, w, h) else {
            continue;
        };
        for (x, y) in clicks {
            ensure!(
                mask.get(x as u32, y as u32),
                "click ({x},{y}) on {w}x{h} not covered"
            );
        }
        done += 1;
    }
    Ok("200 click triples, all clicked pixels foreground".into())
}

fn random_mask(rng: &mut StdRng, w: u32, h: u32) -> BinaryMask {
    let p = rng.random_range(0.0..=1.0);
    BinaryMask::from_vec(
        w,
        h,
        (0..w * h).map(|_| u8::from(rng.random_bool(p))).collect(),
    )
    .unwrap()
}

fn png_round_trip() -> Check {
    let mut rng = StdRng::seed_from_u64(5);
    for n in 0..100 {
        let (w, h) = (rng.random_range(1..=64), rng.random_range(1..=64));
        let m = random_mask(&mut rng, w, h);
        let bytes = encode_png(&m);
        ensure!(bytes == encode_png(&m), "mask {n}: encodes differ");
        ensure!(
            decode_png(&bytes, None).map_err(|e| e.to_string())? == m,
            "mask {n}: round trip"
        );
    }
    Ok("100 random masks round-trip, encodes byte-identical".into())
}

/// Ten images in three synthetic "environments", mixed PNG and JPEG.
fn fixture_corpus(dir: &Path) -> Vec<String> {
    fs::create_dir_all(dir).unwrap();
    let mut names = Vec::new();
    for k in 0..10u32 {
        let (w, h) = (96 + 8 * k, 64 + 4 * k);
        let img = RgbImage::from_fn(w, h, |x, y| match k % 3 {
            0 => Rgb([40, (100 + (x * 7 + y) % 80) as u8, 30]),
            1 => Rgb([(120 + y) as u8, (90 + x / 2) as u8, 60]),
            _ => Rgb([((x + y) % 255) as u8, 90, 90]),
        });
        let name = if k % 4 == 3 {
            format!("env{k:02}.jpg")
        } else {
            format!("env{k:02}.png")
        };
        img.save(dir.join(&name)).unwrap();
        names.push(name);
    }
    names
}

fn corpus_clicks(k: usize, w: u32, h: u32) -> [[i64; 2]; 3] {
    let (w, h) = (i64::from(w), i64::from(h));
    let k = k as i64;
    [[w / 2 + k, h / 4], [k, h - 1], [w - 1 - k, h - 1 - k]]
}

fn write_corpus_annotations(images: &Path, names: &[String], path: &Path) {
    let mut lines = String::new();
    for (k, name) in names.iter().enumerate() {
        let (w, h) = image::image_dimensions(images.join(name)).unwrap();
        let pts = corpus_clicks(k, w, h);
        lines += &json!({"image": name, "points": pts}).to_string();
        lines.push('\n');
    }
    fs::write(path, lines).unwrap();
}

fn hash_masks(dir: &Path) -> BTreeMap<String, String> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.to_string_lossy().ends_with("_mask.png"))
        .map(|p| {
            let digest = Sha256::digest(fs::read(&p).unwrap());
            let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
            (p.file_name().unwrap().to_string_lossy().into_owned(), hex)
        })
        .collect()
}

fn apply(ann: &Path, images: &Path, out: &Path) -> std::process::Output {
    trimask()
        .arg("apply")
        .arg("--annotations")
        .arg(ann)
        .arg("--images")
        .arg(images)
        .arg("--out")
        .arg(out)
        .output()
        .unwrap()
}

fn headless_determinism() -> Check {
    let tmp = tempfile::tempdir().unwrap();
    let images = tmp.path().join("corpus");
    let names = fixture_corpus(&images);
    let ann = tmp.path().join("annotations.jsonl");
    write_corpus_annotations(&images, &names, &ann);

    let (out1, out2) = (tmp.path().join("run1"), tmp.path().join("run2"));
    for out in [&out1, &out2] {
        let o = apply(&ann, &images, out);
        ensure!(
            o.status.code() == Some(0),
            "apply exited {:?}",
            o.status.code()
        );
    }
    let (h1, h2) = (hash_masks(&out1), hash_masks(&out2));
    ensure!(h1.len() == 10, "expected 10 masks, got {}", h1.len());
    ensure!(h1 == h2, "mask hashes differ between runs");

    let bad = tmp.path().join("bad.jsonl");
    fs::write(
        &bad,
        format!(
            "{}\n{}\n{}\n",
            json!({"image": names[0], "points": [[1,1],[2,2],[3,3]]}),
            json!({"image": names[1], "points": [[0,0],[500,0],[0,10]]}),
            json!({"image": names[2], "points": corpus_clicks(2, 112, 72)}),
        ),
    )
    .unwrap();
    let o = apply(&bad, &images, &tmp.path().join("bad_out"));
    ensure!(
        o.status.code() == Some(4),
        "bad records exited {:?}",
        o.status.code()
    );
    let stderr = String::from_utf8_lossy(&o.stderr);
    let expected = format!(
        "error: line 1 ({}): degenerate triangle (collinear points)\n\
         error: line 2 ({}): point out of bounds for 104x68 image\n",
        names[0], names[1]
    );
    ensure!(stderr == expected, "stderr was:\n{stderr}");
    Ok("10-image corpus hash-identical across runs; bad records exit 4".into())
}

/// Counts intersections and unions pixel by pixel.
fn metric_oracle(a: &BinaryMask, b: &BinaryMask) -> (f64, f64, f64) {
    let (w, h) = a.dimensions();
    let (mut fg_i, mut fg_u, mut bg_i, mut bg_u, mut same) = (0u32, 0u32, 0u32, 0u32, 0u32);
    for y in 0..h {
        for x in 0..w {
            let (p, q) = (a.get(x, y), b.get(x, y));
            fg_i += u32::from(p && q);
            fg_u += u32::from(p || q);
            bg_i += u32::from(!p && !q);
            bg_u += u32::from(!p || !q);
            same += u32::from(p == q);
        }
    }
    let ratio = |n: u32, d: u32| {
        if d == 0 {
            1.0
        } else {
            f64::from(n) / f64::from(d)
        }
    };
    let fg = ratio(fg_i, fg_u);
    let bg = ratio(bg_i, bg_u);
    (fg, f64::from(same) / f64::from(w * h), 0.5 * (fg + bg))
}

fn metrics_oracle() -> Check {
    let mut rng = StdRng::seed_from_u64(7);
    for n in 0..100 {
        let a = random_mask(&mut rng, 16, 16);
        let b = random_mask(&mut rng, 16, 16);
        let (o_iou, o_acc, o_miou) = metric_oracle(&a, &b);
        let got = (
            iou(&a, &b).unwrap(),
            pixel_accuracy(&a, &b).unwrap(),
            miou(&a, &b).unwrap(),
        );
        ensure!(
            got == (o_iou, o_acc, o_miou),
            "pair {n}: {got:?} vs {:?}",
            (o_iou, o_acc, o_miou)
        );
    }
    let a = BinaryMask::from_vec(4, 1, vec![1, 1, 0, 0]).unwrap();
    let b = BinaryMask::from_vec(4, 1, vec![1, 0, 0, 0]).unwrap();
    let acc = pixel_accuracy(&a, &b).unwrap();
    let mi = miou(&a, &b).unwrap();
    ensure!(acc == 0.75, "accuracy {acc}");
    ensure!((mi - 7.0 / 12.0).abs() < 1e-15, "miou {mi}");
    Ok(format!(
        "100 random pairs exact; worked example accuracy {acc}, miou {mi:.6}"
    ))
}

fn session_state_machine() -> Check {
    let tmp = tempfile::tempdir().unwrap();
    let images = tmp.path().join("imgs");
    let names = fixture_corpus(&images);
    let out = tmp.path().join("out");
    let mut s = Session::start(&images, &out).map_err(|e| e.to_string())?;

    use SessionState::*;
    // Drive the table directly so state and pending are checked after each op.
    let check =
        |s: &Session, label: &str, state: SessionState, pending: usize| -> Result<(), String> {
            if s.state() != state || s.pending().len() != pending {
                return Err(format!(
                    "{label}: state {:?}/{} pending, want {state:?}/{pending}",
                    s.state(),
                    s.pending().len()
                ));
            }
            Ok(())
        };
    let kind = |ev: Result<SessionEvent, SessionError>| match ev {
        Ok(SessionEvent::PointRejected { reason }) => format!("PointRejected({reason})"),
        Ok(e) => e.kind().to_string(),
        Err(SessionError::WrongState(_)) => "WrongState".into(),
        Err(SessionError::NothingToUndo) => "NothingToUndo".into(),
        Err(e) => format!("error: {e}"),
    };
    let (w0, h0) = s.current_dimensions().unwrap();
    let (w0, h0) = (i64::from(w0), i64::from(h0));
    let table: Vec<(
        &str,
        Box<dyn Fn(&mut Session) -> Result<SessionEvent, SessionError>>,
        &str,
        SessionState,
        usize,
    )> = vec![
        (
            "undo empty",
            Box::new(|s| s.undo_point()),
            "NothingToUndo",
            AwaitingPoints,
            0,
        ),
        (
            "advance early",
            Box::new(|s| s.advance()),
            "WrongState",
            AwaitingPoints,
            0,
        ),
        (
            "p1",
            Box::new(|s| s.add_point(1, 1)),
            "PointAccepted",
            AwaitingPoints,
            1,
        ),
        (
            "oob",
            Box::new(move |s| s.add_point(w0, 0)),
            "PointRejected(out_of_bounds)",
            AwaitingPoints,
            1,
        ),
        (
            "p2",
            Box::new(|s| s.add_point(2, 2)),
            "PointAccepted",
            AwaitingPoints,
            2,
        ),
        (
            "undo",
            Box::new(|s| s.undo_point()),
            "PointAccepted",
            AwaitingPoints,
            1,
        ),
        (
            "p2 again",
            Box::new(|s| s.add_point(2, 2)),
            "PointAccepted",
            AwaitingPoints,
            2,
        ),
        (
            "collinear",
            Box::new(|s| s.add_point(3, 3)),
            "PointRejected(degenerate)",
            AwaitingPoints,
            0,
        ),
        (
            "a",
            Box::new(|s| s.add_point(0, 0)),
            "PointAccepted",
            AwaitingPoints,
            1,
        ),
        (
            "b",
            Box::new(move |s| s.add_point(w0 - 1, 0)),
            "PointAccepted",
            AwaitingPoints,
            2,
        ),
        (
            "c",
            Box::new(move |s| s.add_point(0, h0 - 1)),
            "MaskGenerated",
            MaskReady,
            0,
        ),
        (
            "point in MaskReady",
            Box::new(|s| s.add_point(5, 5)),
            "WrongState",
            MaskReady,
            0,
        ),
        (
            "undo in MaskReady",
            Box::new(|s| s.undo_point()),
            "WrongState",
            MaskReady,
            0,
        ),
        (
            "advance",
            Box::new(|s| s.advance()),
            "Advanced",
            AwaitingPoints,
            0,
        ),
        (
            "next p1",
            Box::new(|s| s.add_point(4, 4)),
            "PointAccepted",
            AwaitingPoints,
            1,
        ),
        (
            "next p2",
            Box::new(|s| s.add_point(40, 6)),
            "PointAccepted",
            AwaitingPoints,
            2,
        ),
        (
            "next p3",
            Box::new(|s| s.add_point(9, 50)),
            "MaskGenerated",
            MaskReady,
            0,
        ),
        (
            "advance 2",
            Box::new(|s| s.advance()),
            "Advanced",
            AwaitingPoints,
            0,
        ),
        (
            "dangling",
            Box::new(|s| s.add_point(4, 4)),
            "PointAccepted",
            AwaitingPoints,
            1,
        ),
        (
            "terminate",
            Box::new(|s| Ok(s.terminate())),
            "Finished",
            Finished,
            0,
        ),
        (
            "terminate again",
            Box::new(|s| Ok(s.terminate())),
            "Finished",
            Finished,
            0,
        ),
        (
            "point when finished",
            Box::new(|s| s.add_point(1, 1)),
            "WrongState",
            Finished,
            0,
        ),
        (
            "advance when finished",
            Box::new(|s| s.advance()),
            "WrongState",
            Finished,
            0,
        ),
        (
            "undo when finished",
            Box::new(|s| s.undo_point()),
            "WrongState",
            Finished,
            0,
        ),
    ];
    let rows = table.len();
    for (label, op, want, state, pending) in table {
        let got = kind(op(&mut s));
        ensure!(got == want, "{label}: got {got}, want {want}");
        check(&s, label, state, pending)?;
    }
    let masks = hash_masks(&out);
    let expected: Vec<String> = names[..2]
        .iter()
        .map(|n| trimask_core::mask_file_name(n))
        .collect();
    ensure!(
        masks.keys().cloned().collect::<Vec<_>>() == expected,
        "mask files {:?}",
        masks.keys()
    );

    // A full pass over the queue writes exactly one mask per image.
    let out_full = tmp.path().join("full");
    let mut s = Session::start(&images, &out_full).map_err(|e| e.to_string())?;
    let mut k = 0;
    while s.state() != Finished {
        let (w, h) = s.current_dimensions().unwrap();
        for [x, y] in corpus_clicks(k, w, h) {
            s.add_point(x, y).map_err(|e| e.to_string())?;
        }
        ensure!(s.state() == MaskReady, "image {k} not completed");
        s.advance().map_err(|e| e.to_string())?;
        k += 1;
    }
    ensure!(
        hash_masks(&out_full).len() == names.len(),
        "one mask per image"
    );
    Ok(format!(
        "{rows}-row event table matched; one mask per completed image"
    ))
}

fn throughput() -> Check {
    let tmp = tempfile::tempdir().unwrap();
    let images = tmp.path().join("images");
    fs::create_dir(&images).unwrap();
    let src = images.join("frame_0000.png");
    RgbImage::from_fn(640, 480, |x, y| {
        Rgb([(x % 256) as u8, (y % 256) as u8, 128])
    })
    .save(&src)
    .unwrap();
    let mut lines = String::new();
    let mut rng = StdRng::seed_from_u64(9);
    for k in 0..1030 {
        let name = format!("frame_{k:04}.png");
        if k > 0 {
            fs::hard_link(&src, images.join(&name))
                .or_else(|_| fs::copy(&src, images.join(&name)).map(|_| ()))
                .unwrap();
        }
        let pts = [
            [rng.random_range(200..440), rng.random_range(0..200)],
            [rng.random_range(0..200), 479],
            [rng.random_range(440..640), 479],
        ];
        lines += &json!({"image": name, "points": pts}).to_string();
        lines.push('\n');
    }
    let ann = tmp.path().join("ann.jsonl");
    fs::write(&ann, lines).unwrap();
    let out = tmp.path().join("out");
    let start = Instant::now();
    let o = apply(&ann, &images, &out);
    let elapsed = start.elapsed();
    ensure!(
        o.status.code() == Some(0),
        "apply exited {:?}",
        o.status.code()
    );
    let written = fs::read_dir(&out).unwrap().count();
    ensure!(written == 1030, "{written} masks written");
    ensure!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    Ok(format!("1030 masks at 640x480 in {elapsed:.2?}"))
}

async fn http_contract() -> Check {
    let tmp = tempfile::tempdir().unwrap();
    let root = tmp.path().canonicalize().unwrap();
    let images = root.join("corpus");
    let names = fixture_corpus(&images);
    fs::create_dir(root.join("empty")).unwrap();

    let server = Server::bind("127.0.0.1:0".parse().unwrap(), &ServiceConfig::new(&root))
        .await
        .map_err(|e| e.to_string())?;
    let base = format!("http://{}", server.local_addr().unwrap());
    tokio::spawn(server.run());
    let client = reqwest::Client::new();
    let post = |path: String, body: Value| {
        let req = client.post(format!("{base}{path}")).json(&body);
        async move {
            let r = req.send().await.map_err(|e| e.to_string())?;
            let status = r.status().as_u16();
            let v: Value = r.json().await.unwrap_or(Value::Null);
            Ok::<_, String>((status, v))
        }
    };
    let mut seen = BTreeMap::new();

    let (st, v) = post("/api/sessions".into(), json!({"input_dir": "corpus"})).await?;
    seen.insert(400, st == 400 && v["error"].is_string());
    let (st, _) = post(
        "/api/sessions".into(),
        json!({"input_dir": "../../etc", "output_dir": "o"}),
    )
    .await?;
    seen.insert(403, st == 403);
    let (st, _) = post(
        "/api/sessions".into(),
        json!({"input_dir": "empty", "output_dir": "o"}),
    )
    .await?;
    let empty_404 = st == 404;

    let (st, v) = post(
        "/api/sessions".into(),
        json!({"input_dir": "corpus", "output_dir": "http_out"}),
    )
    .await?;
    ensure!(st == 201, "create returned {st}");
    let id = v["session_id"].as_str().unwrap().to_string();
    let r = client
        .get(format!("{base}/api/sessions/unknown/image"))
        .send()
        .await
        .map_err(|e| e.to_string())?;
    seen.insert(404, empty_404 && r.status().as_u16() == 404);

    let (st, _) = post(format!("/api/sessions/{id}/undo"), json!({})).await?;
    let undo_409 = st == 409;
    let (st, v) = post(
        format!("/api/sessions/{id}/points"),
        json!({"x": -1, "y": 0}),
    )
    .await?;
    seen.insert(422, st == 422 && v["reason"] == "out_of_bounds");

    let mut clicks = Vec::new();
    for (k, name) in names.iter().enumerate() {
        let (w, h) = image::image_dimensions(images.join(name)).unwrap();
        let pts = corpus_clicks(k, w, h);
        for (i, [x, y]) in pts.iter().enumerate() {
            let (st, v) = post(
                format!("/api/sessions/{id}/points"),
                json!({"x": x, "y": y}),
            )
            .await?;
            ensure!(st == 200, "point {i} on {name}: {st} {v}");
            if i == 2 {
                ensure!(v["event"] == "MaskGenerated", "{name}: {v}");
            }
        }
        let (st, _) = post(format!("/api/sessions/{id}/advance"), json!({})).await?;
        ensure!(st == 200, "advance {st}");
        clicks.push(pts);
    }
    let r = client
        .get(format!("{base}/api/sessions/{id}/image"))
        .send()
        .await
        .map_err(|e| e.to_string())?;
    seen.insert(409, undo_409 && r.status().as_u16() == 409);

    // Replay the session's own log headlessly and compare bytes.
    let ann = root.join("http_out/annotations.jsonl");
    let recorded: Vec<Value> = fs::read_to_string(&ann)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let sent: Vec<Value> = names
        .iter()
        .zip(&clicks)
        .map(|(n, p)| json!({"image": n, "points": p}))
        .collect();
    ensure!(
        recorded == sent,
        "session log does not match the clicks sent"
    );
    let o = apply(&ann, &images, &root.join("cli_out"));
    ensure!(
        o.status.code() == Some(0),
        "apply exited {:?}",
        o.status.code()
    );
    let (http, cli) = (
        hash_masks(&root.join("http_out")),
        hash_masks(&root.join("cli_out")),
    );
    ensure!(
        http.len() == 10 && http == cli,
        "HTTP masks differ from apply output"
    );

    let missing: Vec<_> = seen
        .iter()
        .filter(|(_, ok)| !**ok)
        .map(|(c, _)| *c)
        .collect();
    ensure!(
        missing.is_empty(),
        "error codes not observed as specified: {missing:?}"
    );
    Ok("10 images byte-identical to apply; 400/403/404/409/422 exercised".into())
}

fn main() {
    let rt = tokio::runtime::Runtime::new().unwrap();
    let criteria: Vec<(&str, Box<dyn FnOnce() -> Check>)> = vec![
        (
            "rasterizer oracle equivalence",
            Box::new(oracle_equivalence),
        ),
        ("vertex-order invariance", Box::new(vertex_order_invariance)),
        ("area consistency", Box::new(area_consistency)),
        ("clicked-pixel coverage", Box::new(clicked_pixel_coverage)),
        ("PNG round-trip", Box::new(png_round_trip)),
        ("headless determinism", Box::new(headless_determinism)),
        ("metrics oracle", Box::new(metrics_oracle)),
        ("session state machine", Box::new(session_state_machine)),
        ("throughput", Box::new(throughput)),
        (
            "HTTP contract",
            Box::new(move || rt.block_on(http_contract())),
        ),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
