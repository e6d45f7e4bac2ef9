use handinput::gesture::{count_fingers, hand_orientation, large_defects, FingerCount, Orientation};
use handinput::pipeline::{detect, Pipeline, PipelineConfig};
use handinput::segmentation::{segment, SegmentationAux};
use handinput::synth::{fixture_set, HandSpec};
use handinput::GestureKind;

fn analyze(spec: &HandSpec) -> (FingerCount, Option<Orientation>, Vec<f64>, u32) {
    let cfg = PipelineConfig::default();
    let mask = segment(&spec.render(), &cfg.segmentation, &SegmentationAux::default()).unwrap();
    let d = detect(&mask, &cfg).expect("hand detected");
    let depths = d.defects.iter().map(|x| x.depth).collect();
    let large = large_defects(&d.defects, &d.contour.bbox(), 0.2);
    let o = hand_orientation(&large, &d.contour).ok();
    (count_fingers(&large).unwrap(), o, depths, d.contour.bbox().height())
}

#[test]
fn every_fixture_reads_its_ground_truth() {
    for f in fixture_set() {
        let (count, o, depths, h) = analyze(&f.spec);
        let mut big: Vec<f64> = depths.iter().copied().filter(|&d| d > 2.0).collect();
        big.sort_by(|a, b| b.partial_cmp(a).unwrap());
        eprintln!("{:<14} count={count:?} orient={o:?} h={h} depths={big:.1?}", f.name);
        assert_eq!(count, f.spec.expected_count(), "{}", f.name);
        if f.spec.fingers >= 2 {
            assert_eq!(o, Some(f.spec.orientation), "{}", f.name);
        }
    }
}

#[test]
fn fixtures_scale_to_vga() {
    for f in fixture_set() {
        let spec = f.spec.clone().sized(640, 480);
        let (count, o, _, _) = analyze(&spec);
        assert_eq!(count, spec.expected_count(), "{}", f.name);
        if spec.fingers >= 2 {
            assert_eq!(o, Some(spec.orientation), "{}", f.name);
        }
    }
}

#[test]
fn off_center_hands_still_count() {
    for (dx, dy) in [(-40.0, 0.0), (30.0, 10.0), (0.0, -15.0)] {
        for k in 0..=5 {
            let spec = HandSpec::new(k, Orientation::Up).offset(dx, dy);
            let mut p = Pipeline::new(PipelineConfig::default()).unwrap();
            let out = p.process_frame(0, &spec.render());
            assert_eq!(out.events[0].kind, GestureKind::FingerCount { value: spec.expected_count() }, "k={k} at ({dx},{dy})");
        }
    }
}
