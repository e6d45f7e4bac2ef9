use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpStream;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use handinput::frame::read_frame;
use handinput::segmentation::ColorRange;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_handinput"))
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn handinput(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn events(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn copy_into(dir: &Path, prefix: &str, from: &Path) {
    let mut names: Vec<_> = std::fs::read_dir(from).unwrap().map(|e| e.unwrap().path()).collect();
    names.sort();
    for p in names {
        std::fs::copy(&p, dir.join(format!("{prefix}{}", p.file_name().unwrap().to_string_lossy()))).unwrap();
    }
}

#[test]
fn counts_three_fingers_on_count3() {
    let input = fixtures().join("count3");
    let out = handinput(&["run", "--input", input.to_str().unwrap(), "--method", "otsu", "--mode", "count"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let evs = events(&out);
    assert_eq!(evs.len(), 4);
    for (i, ev) in evs.iter().enumerate() {
        assert_eq!(ev["type"], "finger_count");
        assert_eq!(ev["value"], "three");
        assert_eq!(ev["frame"], i as u64);
    }
}

#[test]
fn events_can_go_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("events.jsonl");
    let input = fixtures().join("count2");
    let out = handinput(&["run", "--input", input.to_str().unwrap(), "--events", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().all(|l| l.contains(r#""value":"two""#)));
}

#[test]
fn missing_input_exits_3() {
    let out = handinput(&["run", "--input", "/definitely/not/here"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("not found"));
}

#[test]
fn calibrated_without_calibration_exits_2() {
    let input = fixtures().join("count3");
    let out = handinput(&["run", "--input", input.to_str().unwrap(), "--method", "calibrated"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--calibrate-frames"));
    let out = handinput(&["run", "--input", input.to_str().unwrap(), "--method", "background_sub"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_flags_and_configs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixtures().join("count3");
    let input = input.to_str().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"gesture":{"wiggle":1}}"#).unwrap();
    let out = handinput(&["run", "--input", input, "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::write(&cfg, r#"{"gesture":{"large_defect_k":0}}"#).unwrap();
    assert_eq!(handinput(&["run", "--input", input, "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(handinput(&["run", "--input", input, "--thresh", "300"]).status.code(), Some(2));
    assert_eq!(handinput(&["run", "--input", input, "--method", "sobel"]).status.code(), Some(2));
    assert_eq!(handinput(&["run", "--input", input, "--dwell-frames", "0"]).status.code(), Some(2));
}

#[test]
fn config_file_sets_the_mode() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"gesture":{"mode":"orientation"}}"#).unwrap();
    let input = fixtures().join("count4");
    let out = handinput(&["run", "--input", input.to_str().unwrap(), "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let values: Vec<_> = events(&out).iter().map(|e| e["value"].as_str().unwrap().to_string()).collect();
    // files are read in name order: down, left, right, up
    assert_eq!(values, ["down", "left", "right", "up"]);
}

#[test]
fn undecodable_frames_are_skipped() {
    let dir = tempfile::tempdir().unwrap();
    copy_into(dir.path(), "", &fixtures().join("count5"));
    std::fs::write(dir.path().join("broken.png"), b"not an image").unwrap();
    let out = handinput(&["run", "--input", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("frame 0: skipped"), "{}", stderr(&out));
    let evs = events(&out);
    assert_eq!(evs.len(), 4);
    assert_eq!(evs[0]["frame"], 1);
}

#[test]
fn calibrate_then_run_with_the_range_file() {
    let dir = tempfile::tempdir().unwrap();
    let range_path = dir.path().join("range.json");
    let calib = fixtures().join("calibration");
    let out = handinput(&["calibrate", "--input", calib.to_str().unwrap(), "--out", range_path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let range: ColorRange = serde_json::from_str(&std::fs::read_to_string(&range_path).unwrap()).unwrap();
    assert_eq!(range.min, range.max);
    assert_eq!(range, serde_json::from_str(&serde_json::to_string(&range).unwrap()).unwrap());

    let input = fixtures().join("count3");
    let out = handinput(&[
        "run", "--input", input.to_str().unwrap(), "--method", "calibrated", "--range-file", range_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(events(&out).iter().all(|e| e["value"] == "three"));

    let out = handinput(&[
        "run", "--input", input.to_str().unwrap(), "--method", "color_range", "--range-file", range_path.to_str().unwrap(),
    ]);
    assert!(events(&out).iter().all(|e| e["value"] == "three"));
}

#[test]
fn calibrate_frames_come_off_the_front_of_the_input() {
    let dir = tempfile::tempdir().unwrap();
    copy_into(dir.path(), "a_", &fixtures().join("calibration"));
    copy_into(dir.path(), "b_", &fixtures().join("count2"));
    let out = handinput(&["run", "--input", dir.path().to_str().unwrap(), "--method", "calibrated", "--calibrate-frames", "3"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let evs = events(&out);
    assert_eq!(evs.len(), 4);
    assert_eq!(evs[0]["frame"], 3);
    assert!(evs.iter().all(|e| e["value"] == "two"));
}

#[test]
fn calibrating_on_nothing_fails() {
    let dir = tempfile::tempdir().unwrap();
    let out = handinput(&[
        "calibrate", "--input", dir.path().to_str().unwrap(), "--out", dir.path().join("r.json").to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("calibration failed"));
}

#[test]
fn background_subtraction_counts() {
    let input = fixtures().join("count4");
    let bg = fixtures().join("backdrop.png");
    let out = handinput(&[
        "run", "--input", input.to_str().unwrap(), "--method", "background_sub", "--background", bg.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(events(&out).iter().all(|e| e["value"] == "four"));
}

#[test]
fn pointer_fixture_clicks_once() {
    let input = fixtures().join("pointer");
    let out = handinput(&["run", "--input", input.to_str().unwrap(), "--mode", "pointer"]);
    let evs = events(&out);
    let clicks: Vec<_> = evs.iter().filter(|e| e["type"] == "click").collect();
    assert_eq!(clicks.len(), 1);
    let moves = evs.iter().filter(|e| e["type"] == "pointer_moved").count();
    assert_eq!(moves, 44);
}

#[test]
fn annotation_writes_frames_without_changing_events() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixtures().join("count5");
    let input = input.to_str().unwrap();
    let plain = handinput(&["run", "--input", input, "--mode", "all"]);
    let ann = dir.path().join("ann");
    let annotated = handinput(&["run", "--input", input, "--mode", "all", "--emit-annotated", ann.to_str().unwrap()]);
    assert_eq!(plain.stdout, annotated.stdout);
    let frame = read_frame(&ann.join("frame_000000.png")).unwrap();
    assert_eq!((frame.width(), frame.height()), (320, 240));
    assert_eq!(std::fs::read_dir(&ann).unwrap().count(), 4);
}

#[test]
fn bundled_fixtures_match_the_generator() {
    let dir = tempfile::tempdir().unwrap();
    let out = handinput(&["fixtures", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let mut checked = 0;
    for entry in walk(dir.path()) {
        let rel = entry.strip_prefix(dir.path()).unwrap();
        let bundled = read_frame(&fixtures().join(rel)).unwrap_or_else(|e| panic!("{}: {e}", rel.display()));
        assert!(read_frame(&entry).unwrap() == bundled, "{} differs", rel.display());
        checked += 1;
    }
    assert_eq!(checked, 72);
}

fn walk(dir: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    for e in std::fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        if p.is_dir() {
            out.extend(walk(&p));
        } else {
            out.push(p);
        }
    }
    out
}

#[test]
fn serve_answers_on_its_port() {
    let input = fixtures().join("count3");
    let mut child = bin()
        .args(["serve", "--input", input.to_str().unwrap(), "--bind", "127.0.0.1:0"])
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut lines = BufReader::new(child.stderr.take().unwrap()).lines();
    let addr = loop {
        let line = lines.next().expect("serve prints its address").unwrap();
        if let Some(a) = line.strip_prefix("listening on http://") {
            break a.to_string();
        }
    };
    let mut conn = TcpStream::connect(&addr).unwrap();
    write!(conn, "GET /snapshot HTTP/1.1\r\nHost: {addr}\r\nConnection: close\r\n\r\n").unwrap();
    let mut resp = String::new();
    conn.read_to_string(&mut resp).unwrap();
    child.kill().unwrap();
    let _ = child.wait();
    assert!(resp.starts_with("HTTP/1.1 200"), "{resp}");
    let body: Value = serde_json::from_str(&resp[resp.find("\r\n\r\n").unwrap() + 4..]).unwrap();
    assert_eq!(body["type"], "snapshot");
    assert_eq!(body["config"]["output"]["annotate"], true);
}
