#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "asn/csv.hpp"
#include "asn/dominance.hpp"
#include "asn/ingest.hpp"
#include "asn/stats.hpp"

using namespace asn;

namespace {

const std::filesystem::path kData = ASN_DATA_DIR;

Parsed<ApplicationRecord> apps_from(const std::string& text) {
  std::istringstream in(text);
  return parse_applications(in);
}

Parsed<MedianSet> medians_from(const std::string& text) {
  std::istringstream in(text);
  return parse_medians(in);
}

const std::string kHeader =
    "last_name,first_name,discipline,sub_discipline,role,ind1,ind2,ind3,qualified\n";

Errc error_code(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return Errc::invalid_argument;
}

SynthConfig small_config() {
  SynthConfig c;
  for (const char* code : {"01/A1", "09/H1", "10/D1", "11/E1", "08/C1"}) {
    DisciplineRegistryEntry e;
    e.discipline = DisciplineId::parse(code);
    e.area_acronym = std::string(area_acronym(e.discipline.area));
    e.kind = default_kind(e.discipline);
    c.disciplines.push_back(e);
  }
  c.full_applicants = {10, 30};
  c.associate_applicants = {20, 40};
  c.professors_per_median = 31;
  return c;
}

}  // namespace

TEST(CsvFormat, Numbers) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(std::nan("")), "NaN");
  EXPECT_EQ(parse_number("1e3"), 1000.0);
  EXPECT_EQ(parse_number("+2.5"), 2.5);
  EXPECT_FALSE(parse_number("2,5"));
  EXPECT_FALSE(parse_number("nan"));
  EXPECT_FALSE(parse_number("inf"));
  EXPECT_FALSE(parse_number(""));
  EXPECT_FALSE(parse_number("3x"));
}

TEST(CsvFormat, QuotedFieldsRoundTrip) {
  std::ostringstream out;
  write_csv_row(out, {"plain", "with,comma", "with \"quote\"", "line\nbreak", ""});
  std::istringstream in(out.str() + "\r\n\nnext,row\r\n");
  CsvReader reader(in);
  CsvRow row;
  ASSERT_TRUE(reader.next(row));
  EXPECT_EQ(row.fields, (std::vector<std::string>{"plain", "with,comma", "with \"quote\"",
                                                  "line\nbreak", ""}));
  ASSERT_TRUE(reader.next(row));
  EXPECT_EQ(row.fields, (std::vector<std::string>{"next", "row"}));
  EXPECT_EQ(row.line, 5u);  // the quoted field spans lines 1-2, then two blank lines
  EXPECT_FALSE(reader.next(row));
  std::istringstream bad("\"open,quote\n");
  CsvReader r2(bad);
  EXPECT_THROW(r2.next(row), Error);
}

TEST(ParseApplications, WellFormed) {
  const auto p = apps_from(kHeader +
                           "Rossi,Mario,01/A1,,1,1.5,2,3,true\n"
                           "Bianchi,Anna,01/A1,,2,0,0,0,false\n"
                           "\"Verdi, jr\",Luca,13/A1,SECS-P/01,2,4,5,6,TRUE\n");
  ASSERT_EQ(p.records.size(), 3u);
  EXPECT_TRUE(p.diagnostics.empty());
  EXPECT_EQ(p.records[0].role, Role::full);
  EXPECT_EQ(p.records[1].role, Role::associate);
  EXPECT_EQ(p.records[0].indicators, make_indicators(1.5, 2, 3, IndicatorKind::bibliometric));
  EXPECT_EQ(p.records[0].applicant_id, "Rossi,Mario");
  EXPECT_EQ(p.records[2].last_name, "Verdi, jr");
  EXPECT_EQ(p.records[2].discipline.sub_discipline, "SECS-P/01");
  EXPECT_EQ(p.records[2].indicators.kind, IndicatorKind::non_bibliometric);
  EXPECT_TRUE(p.records[2].qualified);
}

TEST(ParseApplications, ColumnsLocatedByName) {
  const auto p = apps_from(
      "qualified,ind3,ind2,ind1,role,discipline,first_name,last_name,applicant_id\n"
      "false,3,2,1,1,09/H1,Ada,Lovelace,X1\n");
  ASSERT_EQ(p.records.size(), 1u);
  EXPECT_EQ(p.records[0].applicant_id, "X1");
  EXPECT_EQ(p.records[0].indicators.ind1, 1.0);
  EXPECT_EQ(p.records[0].indicators.ind3, 3.0);
}

TEST(ParseApplications, UnknownRoleSkipsRow) {
  const auto p = apps_from(kHeader + "Rossi,Mario,01/A1,,3,1,2,3,true\n"
                                     "Bianchi,Anna,01/A1,,2,0,0,0,false\n");
  ASSERT_EQ(p.records.size(), 1u);
  ASSERT_EQ(p.diagnostics.size(), 1u);
  EXPECT_EQ(p.diagnostics[0].line, 2u);
  EXPECT_NE(p.diagnostics[0].message.find("unknown role"), std::string::npos);
}

TEST(ParseApplications, MissingIndicatorNamesColumn) {
  const auto p = apps_from(kHeader + "Rossi,Mario,01/A1,,1,1,,3,true\n"
                                     "Bianchi,Anna,01/A1,,2,0,0,0,false\n");
  ASSERT_EQ(p.records.size(), 1u);
  ASSERT_EQ(p.diagnostics.size(), 1u);
  EXPECT_EQ(p.diagnostics[0].column, "ind2");
  EXPECT_NE(p.diagnostics[0].message.find("ind2"), std::string::npos);
  EXPECT_NE(p.diagnostics[0].to_string().find(":2"), std::string::npos);
}

TEST(ParseApplications, OtherRowDamage) {
  const auto p = apps_from(kHeader + "A,B,01/A1,,1,x,2,3,true\n"
                                     "A,C,01/A1,,1,-1,2,3,true\n"
                                     "A,D,99/A1,,1,1,2,3,true\n"
                                     "A,E,01/A1,,1,1,2,3,maybe\n"
                                     "A,F,01/A1,,1,1,2\n"
                                     "A,G,01/A1,,1,inf,2,3,true\n");
  EXPECT_TRUE(p.records.empty());
  EXPECT_EQ(p.diagnostics.size(), 6u);
}

TEST(ParseApplications, HardErrors) {
  EXPECT_EQ(error_code([] { apps_from("last_name,first_name,discipline,role,ind1,ind2,qualified\n"); }),
            Errc::missing_column);
  EXPECT_EQ(error_code([] { apps_from(""); }), Errc::missing_column);
  EXPECT_EQ(error_code([] {
              apps_from(kHeader + "Rossi,Mario,01/A1,,1,1,2,3,true\n"
                                  "Rossi,Mario,01/A1,,1,4,5,6,false\n");
            }),
            Errc::duplicate_entry);
}

TEST(ParseApplications, SameApplicantDifferentRoleOrDisciplineIsFine) {
  const auto p = apps_from(kHeader + "Rossi,Mario,01/A1,,1,1,2,3,true\n"
                                     "Rossi,Mario,01/A1,,2,1,2,3,true\n"
                                     "Rossi,Mario,01/A2,,1,1,2,3,true\n");
  EXPECT_EQ(p.records.size(), 3u);
}

TEST(ParseApplications, KindFromRegistry) {
  DisciplineRegistryEntry e{DisciplineId::parse("01/A1"), "MCS", IndicatorKind::non_bibliometric,
                            ""};
  const DisciplineRegistry reg({e});
  std::istringstream in(kHeader + "Rossi,Mario,01/A1,,1,1,2,3,true\n");
  const auto p = parse_applications(in, &reg);
  EXPECT_EQ(p.records.at(0).indicators.kind, IndicatorKind::non_bibliometric);
}

TEST(ParseMedians, Examples) {
  const std::string header = "discipline,sub_discipline,role,kind,m1,m2,m3\n";
  const auto p = medians_from(header +
                              "01/A1,,1,B,10,13.2,7\n"
                              "01/A1,,2,B,8,11,5\n"
                              "10/A1,,1,NB,0,2,3\n"
                              "10/A1,,2,NB,0,0,3\n");
  ASSERT_EQ(p.records.size(), 4u);
  EXPECT_TRUE(p.diagnostics.empty());
  EXPECT_EQ(p.records[0].m2, 13.2);
  EXPECT_EQ(p.records[3].kind, IndicatorKind::non_bibliometric);

  EXPECT_EQ(error_code([&] { medians_from(header + "01/A1,,1,B,1,2,3\n01/A1,,1,B,4,5,6\n"); }),
            Errc::duplicate_entry);
  const auto sub = medians_from(header + "13/A1,,1,NB,1,2,3\n13/A1,X,1,NB,4,5,6\n");
  EXPECT_EQ(sub.records.size(), 2u);

  const auto neg = medians_from(header + "01/A1,,1,B,-1,2,3\n01/A1,,2,B,1,2,3\n");
  EXPECT_EQ(neg.records.size(), 1u);
  ASSERT_EQ(neg.diagnostics.size(), 1u);
  EXPECT_EQ(neg.diagnostics[0].column, "m1");
}

TEST(Registry, ShippedFileMatchesAreaCountsAndPartition) {
  std::ifstream in(kData / "registry.csv");
  ASSERT_TRUE(in);
  const auto p = parse_registry(in);
  EXPECT_TRUE(p.diagnostics.empty());
  ASSERT_EQ(p.records.size(), 184u);
  const DisciplineRegistry reg(p.records);
  std::map<int, int> per_area;
  for (const auto& e : reg.entries()) {
    ++per_area[e.area()];
    EXPECT_EQ(e.area_acronym, area_acronym(e.area()));
    EXPECT_EQ(e.kind, default_kind(e.discipline)) << e.discipline.code();
    EXPECT_FALSE(e.name.empty());
  }
  const std::map<int, int> expected{{1, 7},   {2, 6},   {3, 8},   {4, 4},   {5, 13},
                                    {6, 26},  {7, 14},  {8, 12},  {9, 20},  {10, 19},
                                    {11, 17}, {12, 16}, {13, 15}, {14, 7}};
  EXPECT_EQ(per_area, expected);
  for (const char* code : {"08/C1", "08/D1", "08/E1", "08/E2", "08/F1"}) {
    EXPECT_EQ(reg.find(DisciplineId::parse(code))->kind, IndicatorKind::non_bibliometric);
  }
  for (const char* code : {"11/E1", "11/E2", "11/E3", "11/E4"}) {
    EXPECT_EQ(reg.find(DisciplineId::parse(code))->kind, IndicatorKind::bibliometric);
  }
  for (const auto& e : reg.entries()) {
    if (e.area() >= 10 && !(e.area() == 11 && e.discipline.macro_sector == 'E')) {
      EXPECT_EQ(e.kind, IndicatorKind::non_bibliometric) << e.discipline.code();
    }
  }
}

TEST(Registry, LookupIgnoresSubDiscipline) {
  const DisciplineRegistry reg(
      {DisciplineRegistryEntry{DisciplineId::parse("13/A1"), "ECS", IndicatorKind::non_bibliometric, ""}});
  EXPECT_NE(reg.find(DisciplineId::parse("13/A1", "X")), nullptr);
  EXPECT_EQ(reg.find(DisciplineId::parse("13/A2")), nullptr);
  EXPECT_THROW(DisciplineRegistry({reg.entries()[0], reg.entries()[0]}), Error);
}

TEST(Registry, RejectsBadAcronymAndKind) {
  std::istringstream in("discipline,area_acronym,kind\n01/A1,mcs,B\n01/A2,MCS,Q\n01/A3,MCS,B\n");
  const auto p = parse_registry(in);
  EXPECT_EQ(p.records.size(), 1u);
  EXPECT_EQ(p.diagnostics.size(), 2u);
}

TEST(DefaultKind, Partition) {
  EXPECT_EQ(default_kind(DisciplineId::parse("01/A1")), IndicatorKind::bibliometric);
  EXPECT_EQ(default_kind(DisciplineId::parse("08/C1")), IndicatorKind::non_bibliometric);
  EXPECT_EQ(default_kind(DisciplineId::parse("08/A1")), IndicatorKind::bibliometric);
  EXPECT_EQ(default_kind(DisciplineId::parse("11/E4")), IndicatorKind::bibliometric);
  EXPECT_EQ(default_kind(DisciplineId::parse("11/D1")), IndicatorKind::non_bibliometric);
  EXPECT_EQ(default_kind(DisciplineId::parse("14/C1")), IndicatorKind::non_bibliometric);
}

TEST(ValidateRound, ReportsInconsistencies) {
  RoundDataset d;
  d.registry = {{DisciplineId::parse("01/A1"), "MCS", IndicatorKind::bibliometric, ""},
                {DisciplineId::parse("10/A1"), "PHY", IndicatorKind::non_bibliometric, ""}};
  d.medians = {{DisciplineId::parse("01/A1"), Role::full, 0, 1, 1, IndicatorKind::bibliometric},
               {DisciplineId::parse("02/A1"), Role::full, 1, 1, 1, IndicatorKind::bibliometric}};
  ApplicationRecord a;
  a.applicant_id = "x";
  a.discipline = DisciplineId::parse("01/A1");
  a.role = Role::associate;  // no median set
  a.indicators = make_indicators(1, 1, 1, IndicatorKind::bibliometric);
  auto b = a;
  b.applicant_id = "y";
  b.discipline = DisciplineId::parse("05/A1");  // unregistered
  d.applications = {a, b};
  const auto diags = validate_round(d);
  EXPECT_TRUE(has_errors(diags));
  int errors = 0, warnings = 0;
  for (const auto& g : diags) ++(g.severity == Severity::error ? errors : warnings);
  // Unregistered median discipline, missing median set, unresolved discipline.
  EXPECT_EQ(errors, 3);
  // Acronym mismatch, zero bibliometric median.
  EXPECT_EQ(warnings, 2);
}

TEST(RoundTrip, ParseWriteParse) {
  const auto original = asn::synthesize_round(small_config(), 5);
  std::ostringstream a, m, r;
  write_applications(a, original.applications);
  write_medians(m, original.medians);
  write_registry(r, original.registry);

  std::istringstream ra(r.str());
  const auto reg = parse_registry(ra);
  ASSERT_TRUE(reg.diagnostics.empty());
  const DisciplineRegistry lookup(reg.records);
  std::istringstream aa(a.str()), mm(m.str());
  const auto apps = parse_applications(aa, &lookup);
  const auto meds = parse_medians(mm);
  ASSERT_TRUE(apps.diagnostics.empty());
  ASSERT_TRUE(meds.diagnostics.empty());
  ASSERT_EQ(apps.records.size(), original.applications.size());
  for (std::size_t i = 0; i < apps.records.size(); ++i) {
    const auto& x = apps.records[i];
    const auto& y = original.applications[i];
    EXPECT_EQ(x.applicant_id, y.applicant_id);
    EXPECT_EQ(x.last_name, y.last_name);
    EXPECT_EQ(x.first_name, y.first_name);
    EXPECT_EQ(x.discipline, y.discipline);
    EXPECT_EQ(x.role, y.role);
    EXPECT_EQ(x.indicators, y.indicators);
    EXPECT_EQ(x.qualified, y.qualified);
  }
  ASSERT_EQ(meds.records.size(), original.medians.size());
  for (std::size_t i = 0; i < meds.records.size(); ++i) {
    EXPECT_EQ(meds.records[i].discipline, original.medians[i].discipline);
    EXPECT_EQ(meds.records[i].values(), original.medians[i].values());
    EXPECT_EQ(meds.records[i].kind, original.medians[i].kind);
  }
  std::ostringstream a2;
  write_applications(a2, apps.records);
  EXPECT_EQ(a2.str(), a.str());
}

TEST(Synth, DeterministicAndValid) {
  const auto c = small_config();
  const auto x = synthesize_round(c, 9);
  const auto y = synthesize_round(c, 9);
  std::ostringstream sx, sy;
  write_applications(sx, x.applications);
  write_applications(sy, y.applications);
  EXPECT_EQ(sx.str(), sy.str());
  const auto z = synthesize_round(c, 10);
  std::ostringstream sz;
  write_applications(sz, z.applications);
  EXPECT_NE(sx.str(), sz.str());
  EXPECT_FALSE(has_errors(validate_round(x)));
  for (const auto& e : c.disciplines) {
    std::size_t f = 0, a = 0;
    for (const auto& app : x.applications) {
      if (app.discipline != e.discipline) continue;
      ++(app.role == Role::full ? f : a);
    }
    EXPECT_GE(f, 10u);
    EXPECT_LE(f, 30u);
    EXPECT_GE(a, 20u);
    EXPECT_LE(a, 40u);
  }
}

TEST(Synth, StrictModelQualifiesOnlyOverMedianAndHasNoViolations) {
  auto c = small_config();
  c.decision = DecisionModel::strict_median;
  const auto d = synthesize_round(c, 3);
  const MedianTable table(d.medians);
  std::size_t qualified = 0;
  for (const auto& a : d.applications) {
    if (!a.qualified) continue;
    ++qualified;
    EXPECT_EQ(classify(a.indicators, *table.find(a.discipline, a.role)), MedianClass::over_median);
  }
  EXPECT_GT(qualified, 0u);
  for (const auto& e : c.disciplines) {
    for (Role r : kRoles) {
      std::vector<ApplicationRecord> group;
      for (const auto& a : d.applications) {
        if (a.discipline == e.discipline && a.role == r) group.push_back(a);
      }
      EXPECT_EQ(pvr(group).violations, 0u);
    }
  }
}

TEST(Synth, ZeroNoiseMatchesBaseModel) {
  for (DecisionModel base : {DecisionModel::strict_median, DecisionModel::relaxed}) {
    auto c = small_config();
    c.decision = base;
    const auto plain = synthesize_round(c, 12);
    c.decision = DecisionModel::noisy_threshold;
    c.noise_base = base;
    c.epsilon = 0.0;
    const auto noisy = synthesize_round(c, 12);
    ASSERT_EQ(plain.applications.size(), noisy.applications.size());
    for (std::size_t i = 0; i < plain.applications.size(); ++i) {
      EXPECT_EQ(plain.applications[i].qualified, noisy.applications[i].qualified);
      EXPECT_EQ(plain.applications[i].indicators, noisy.applications[i].indicators);
    }
  }
}

TEST(Synth, NoiseCreatesViolations) {
  auto c = small_config();
  c.decision = DecisionModel::noisy_threshold;
  c.epsilon = 0.2;
  const auto d = synthesize_round(c, 4);
  std::size_t violations = 0;
  for (const auto& e : c.disciplines) {
    std::vector<ApplicationRecord> group;
    for (const auto& a : d.applications) {
      if (a.discipline == e.discipline && a.role == Role::associate) group.push_back(a);
    }
    violations += pvr(group).violations;
  }
  EXPECT_GT(violations, 0u);
}

TEST(Synth, ConfigValidation) {
  auto c = small_config();
  c.epsilon = 1.5;
  EXPECT_EQ(error_code([&] { validate_config(c); }), Errc::invalid_config);
  c = small_config();
  c.bibliometric[0].b = -1;
  EXPECT_EQ(error_code([&] { validate_config(c); }), Errc::invalid_config);
  c = small_config();
  c.full_applicants = {5, 2};
  EXPECT_EQ(error_code([&] { validate_config(c); }), Errc::invalid_config);
  c = small_config();
  c.disciplines.clear();
  EXPECT_EQ(error_code([&] { validate_config(c); }), Errc::invalid_config);
}

TEST(Synth, ParsesJsonConfig) {
  std::istringstream in(R"({
    "seed": 3,
    "registry": "registry.csv",
    "applicants": {"full": {"min": 1, "max": 2}},
    "overrides": {"01/A1": {"full": 7, "associate": 9}},
    "indicators": {"bibliometric": [
       {"family": "uniform", "low": 0, "high": 5},
       {"family": "exponential", "rate": 2},
       {"family": "poisson", "mean": 3, "zero_probability": 0.1}]},
    "decision": {"model": "noisy-threshold", "base": "relaxed", "epsilon": 0.05}
  })");
  const auto c = parse_synth_config(in, kData);
  EXPECT_EQ(c.seed, 3u);
  EXPECT_EQ(c.disciplines.size(), 184u);
  EXPECT_EQ(c.full_applicants.max, 2);
  EXPECT_EQ(c.overrides.at("01/A1"), (std::pair{7, 9}));
  EXPECT_EQ(c.bibliometric[1].family, DistributionFamily::exponential);
  EXPECT_EQ(c.decision, DecisionModel::noisy_threshold);
  EXPECT_EQ(c.noise_base, DecisionModel::relaxed);
  EXPECT_DOUBLE_EQ(c.epsilon, 0.05);

  const auto d = synthesize_round(c, c.seed);
  std::size_t f = 0, a = 0;
  for (const auto& app : d.applications) {
    if (app.discipline.code() != "01/A1") continue;
    ++(app.role == Role::full ? f : a);
  }
  EXPECT_EQ(f, 7u);
  EXPECT_EQ(a, 9u);

  std::istringstream bad(R"({"disciplines": [{"code": "01/A1"}], "decision": {"model": "lottery"}})");
  EXPECT_EQ(error_code([&] { (void)parse_synth_config(bad); }), Errc::invalid_config);
  std::istringstream broken("{not json");
  EXPECT_EQ(error_code([&] { (void)parse_synth_config(broken); }), Errc::invalid_config);
}

TEST(LoadRound, MissingFileIsIoError) {
  EXPECT_EQ(error_code([] { (void)load_round("/nonexistent/a.csv", "/nonexistent/m.csv",
                                             kData / "registry.csv"); }),
            Errc::io_error);
}
