#include "wmrmr/dataset.hpp"

namespace wmrmr {

std::string to_string(Snapshot s) {
  switch (s) {
    case Snapshot::Static: return "static";
    case Snapshot::T0: return "t0";
    case Snapshot::Tcl: return "tcl";
    case Snapshot::Tcl3c: return "tcl+3c";
    case Snapshot::Tcl6c: return "tcl+6c";
    case Snapshot::Tcl9c: return "tcl+9c";
  }
  return "unknown";
}

// t0: fault inception; tcl: fault clearing; tcl+Nc: N cycles after clearing.
// "COI" is the center of inertia.
const FeatureCatalog& tz_catalog() {
  using S = Snapshot;
  static const FeatureCatalog catalog = {
      {"Tz1", S::Static, "mean mechanical power over all generators"},
      {"Tz2", S::T0, "maximum initial acceleration over all generators"},
      {"Tz3", S::T0, "initial rotor angle of the generator with the largest acceleration"},
      {"Tz4", S::T0, "mean initial accelerating power over all generators"},
      {"Tz5", S::Tcl, "system impact magnitude"},
      {"Tz6", S::Tcl, "rotor angle of the generator deviating most from the COI"},
      {"Tz7", S::Tcl, "kinetic energy of the generator with the largest rotor angle"},
      {"Tz8", S::Tcl, "rotor angle of the generator with the largest kinetic energy"},
      {"Tz9", S::Tcl, "maximum rotor kinetic energy over all generators"},
      {"Tz10", S::Tcl, "mean rotor kinetic energy over all generators"},
      {"Tz11", S::Tcl, "maximum relative rotor swing angle"},
      {"Tz12", S::Tcl, "angular speed of the generator deviating most from the COI"},
      {"Tz13", S::Tcl3c, "system impact magnitude"},
      {"Tz14", S::Tcl3c, "maximum rotor kinetic energy over all generators"},
      {"Tz15", S::Tcl3c, "mean rotor kinetic energy over all generators"},
      {"Tz16", S::Tcl3c, "rotor angle of the generator deviating most from the COI"},
      {"Tz17", S::Tcl3c, "maximum relative rotor swing angle"},
      {"Tz18", S::Tcl3c, "kinetic energy of the generator with the largest rotor angle"},
      {"Tz19", S::Tcl3c, "angular speed of the generator deviating most from the COI"},
      {"Tz20", S::Tcl6c, "system impact magnitude"},
      {"Tz21", S::Tcl6c, "maximum rotor kinetic energy over all generators"},
      {"Tz22", S::Tcl6c, "mean rotor kinetic energy over all generators"},
      {"Tz23", S::Tcl6c, "kinetic energy of the generator with the largest rotor angle"},
      {"Tz24", S::Tcl6c, "rotor angle of the generator deviating most from the COI"},
      {"Tz25", S::Tcl6c, "maximum relative rotor swing angle"},
      {"Tz26", S::Tcl6c, "angular speed of the generator deviating most from the COI"},
      {"Tz27", S::Tcl9c, "system impact magnitude"},
      {"Tz28", S::Tcl9c, "kinetic energy of the generator with the largest rotor angle"},
      {"Tz29", S::Tcl9c, "maximum rotor kinetic energy over all generators"},
      {"Tz30", S::Tcl9c, "mean rotor kinetic energy over all generators"},
      {"Tz31", S::Tcl9c, "rotor angle of the generator deviating most from the COI"},
      {"Tz32", S::Tcl9c, "maximum relative rotor swing angle"},
      {"Tz33", S::Tcl9c, "angular speed of the generator deviating most from the COI"},
  };
  return catalog;
}

}  // namespace wmrmr
