fn main() {
    println!("start");
    let run = circleflow::experiments::reflections_mc(6, 1, 50, 3).unwrap();
    println!("done skipped={} first angles: {:?}", run.skipped, &run.eigen_angles[..6]);
}
