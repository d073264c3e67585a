/** Static Romanian phoneme inventory for the expected-sound picker.
 *
 * Sounds most often affected in dyslalia lead the list; each carries a
 * couple of probe words a therapist can pick instead of typing.
 */

export interface PhonemeEntry {
  sound: string;
  probes: string[];
}

export const PHONEMES: PhonemeEntry[] = [
  { sound: "r", probes: ["rață", "roată", "ramă", "car"] },
  { sound: "s", probes: ["sare", "soare", "casă", "sac"] },
  { sound: "ș", probes: ["șarpe", "coș", "șapcă"] },
  { sound: "z", probes: ["zahăr", "zebră", "vază"] },
  { sound: "ț", probes: ["țap", "rață", "colț"] },
  { sound: "j", probes: ["joc", "vrajă", "jucărie"] },
  { sound: "ce", probes: ["ceas", "cerc", "cetate"] },
  { sound: "ci", probes: ["cireș", "arici", "cinci"] },
  { sound: "ge", probes: ["ger", "geam", "deget"] },
  { sound: "gi", probes: ["girafă", "magiun"] },
  { sound: "l", probes: ["lac", "lalea", "cal"] },
  { sound: "f", probes: ["foc", "floare", "telefon"] },
  { sound: "v", probes: ["vapor", "vacă", "avion"] },
  { sound: "t", probes: ["tobă", "tata", "pat"] },
  { sound: "d", probes: ["dop", "deal", "pod"] },
  { sound: "c", probes: ["cana", "cocoș", "ac"] },
  { sound: "g", probes: ["gâscă", "galben", "fag"] },
  { sound: "h", probes: ["horn", "haină", "duh"] },
  { sound: "m", probes: ["masă", "mamă", "pom"] },
  { sound: "n", probes: ["nas", "nor", "pian"] },
  { sound: "p", probes: ["pisică", "pară", "dop"] },
  { sound: "b", probes: ["barcă", "bunic", "cub"] },
];

export function probesFor(sound: string): string[] {
  const entry = PHONEMES.find((p) => p.sound === sound);
  return entry ? entry.probes : [];
}
