#include "syntqa/table.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "syntqa/errors.hpp"
#include "syntqa/text.hpp"

namespace syntqa {

namespace {

// RFC-style CSV: quoted fields may contain commas, doubled quotes, and
// newlines. Returns rows of raw field strings.
std::vector<std::vector<std::string>> parse_csv(const std::string& content) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  auto end_field = [&] {
    record.push_back(field);
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
  };
  for (std::size_t i = 0; i < content.size(); ++i) {
    char c = content[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && !field_started) {
      in_quotes = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r') {
      // swallowed; \r\n handled at \n
    } else if (c == '\n') {
      end_record();
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (in_quotes) {
    throw Error(ErrorKind::MalformedTable, "unterminated quoted field");
  }
  if (!field.empty() || !record.empty()) end_record();
  return records;
}

std::string csv_escape(const std::string& field) {
  bool needs_quotes = field.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs_quotes) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::vector<ColumnType> infer_types(const std::vector<std::string>& header,
                                    const std::vector<std::vector<CellValue>>& rows) {
  std::vector<ColumnType> types(header.size(), ColumnType::Text);
  for (std::size_t c = 0; c < header.size(); ++c) {
    std::size_t non_empty = 0, numeric = 0;
    for (const auto& row : rows) {
      if (row[c].is_empty()) continue;
      ++non_empty;
      if (row[c].is_number()) ++numeric;
    }
    // a column is numeric when at least 80% of its non-empty cells are
    if (non_empty > 0 && numeric * 5 >= non_empty * 4) types[c] = ColumnType::Numeric;
  }
  return types;
}

}  // namespace

int TableData::find_column(std::string_view name) const {
  std::string needle = normalize_name(name);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (normalize_name(header[i]) == needle) return static_cast<int>(i);
  }
  return -1;
}

TableData TableData::build(std::string id, std::vector<std::string> header,
                           std::vector<std::vector<CellValue>> rows) {
  if (header.empty()) {
    throw Error(ErrorKind::MalformedTable, "table '" + id + "' has no header");
  }
  std::set<std::string> seen;
  for (const auto& name : header) {
    if (!seen.insert(normalize_name(name)).second) {
      throw Error(ErrorKind::DuplicateColumn,
                  "table '" + id + "' duplicates column '" + name + "'");
    }
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != header.size()) {
      throw Error(ErrorKind::MalformedTable,
                  "table '" + id + "' row " + std::to_string(r + 1) + " has " +
                      std::to_string(rows[r].size()) + " cells, expected " +
                      std::to_string(header.size()));
    }
  }
  TableData table;
  table.id = std::move(id);
  table.header = std::move(header);
  table.rows = std::move(rows);
  table.inferred_types = infer_types(table.header, table.rows);
  return table;
}

Linearization linearize(const TableData& table, std::size_t budget) {
  if (budget < 1) {
    throw Error(ErrorKind::InvalidSpec, "linearization budget must be >= 1");
  }
  auto count_tokens = [](const std::string& s) {
    std::size_t n = 0;
    bool in_tok = false;
    for (char c : s) {
      bool ws = std::isspace(static_cast<unsigned char>(c)) != 0;
      if (!ws && !in_tok) ++n;
      in_tok = !ws;
    }
    return n;
  };

  std::string head = "col :";
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c > 0) head += " |";
    head += " " + table.header[c];
  }
  std::vector<std::string> row_texts;
  row_texts.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    std::string line = "row " + std::to_string(r + 1) + " :";
    for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
      if (c > 0) line += " |";
      const std::string cell = table.rows[r][c].display();
      line += " " + cell;
    }
    row_texts.push_back(std::move(line));
  }

  std::size_t total = count_tokens(head);
  for (const auto& line : row_texts) total += count_tokens(line);

  Linearization out;
  out.total_tokens = total;
  out.truncated = total > budget;
  out.text = head;
  std::size_t used = count_tokens(head);
  for (const auto& line : row_texts) {
    std::size_t line_tokens = count_tokens(line);
    if (out.truncated && used + line_tokens > budget) break;
    out.text += " " + line;
    used += line_tokens;
  }
  return out;
}

TableData load_table_csv(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::IoError, "cannot open table file " + file.string());
  }
  std::stringstream buf;
  buf << in.rdbuf();
  auto records = parse_csv(buf.str());
  if (records.empty()) {
    throw Error(ErrorKind::MalformedTable, "table file " + file.string() + " is empty");
  }
  std::vector<std::string> header = records[0];
  std::vector<std::vector<CellValue>> rows;
  rows.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    // blank lines (a single empty field) are not rows of multi-column tables
    if (header.size() > 1 && records[r].size() == 1 && records[r][0].empty()) continue;
    std::vector<CellValue> row;
    row.reserve(records[r].size());
    for (const auto& raw : records[r]) row.push_back(CellValue::from_raw(raw));
    rows.push_back(std::move(row));
  }
  return TableData::build(file.stem().string(), std::move(header), std::move(rows));
}

void save_table_csv(const TableData& table, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::IoError, "cannot write table file " + file.string());
  }
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c > 0) out << ',';
    out << csv_escape(table.header[c]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << ',';
      out << csv_escape(row[c].display());
    }
    out << '\n';
  }
}

std::map<std::string, TableData> load_tables(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  if (!fs::exists(path)) {
    throw Error(ErrorKind::IoError, "no such path: " + path.string());
  }
  std::map<std::string, TableData> tables;
  auto add = [&](const fs::path& file) {
    TableData t = load_table_csv(file);
    std::string id = t.id;
    if (!tables.emplace(id, std::move(t)).second) {
      throw Error(ErrorKind::DuplicateId, "duplicate table id '" + id + "'");
    }
  };
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".csv") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) add(f);
  } else {
    add(path);
  }
  return tables;
}

}  // namespace syntqa
