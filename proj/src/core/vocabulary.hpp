#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "core/rational.hpp"

namespace fsr {

enum class Sensing : std::uint8_t { ST, SF };

enum class FieldKind : std::uint8_t { Point, Edge };

struct FieldSpec {
  std::string name;
  std::string quantity;
  FieldKind kind = FieldKind::Point;
  Rational source{1};
  Rational decay{1, 2};

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

inline constexpr std::string_view kTypeX = "e_X";
inline constexpr std::string_view kTypeRobot = "e_robot";
inline constexpr std::string_view kSpecX = "s_X";
inline constexpr std::string_view kSpecRobot = "s_robot";
inline constexpr std::string_view kQuantityX = "fq_X";
inline constexpr std::string_view kQuantityRobot = "fq_robot";

// Largest Manhattan distance at which the spec still contributes a positive
// value; -1 if it never does. Zero decay reaches everything.
int spec_reach(const FieldSpec& s, int cap);

// Contribution of one instance at distance z, clamped at 0.
Rational spec_contribution(const FieldSpec& s, int z);

// Square types (ST) or field specs and quantities (SF). Ids are indices.
class Vocabulary {
 public:
  // Reserved entries are appended if absent.
  static Vocabulary square_types(std::vector<std::string> names);
  static Vocabulary field_set(std::vector<FieldSpec> specs);

  Sensing sensing() const { return sensing_; }

  const std::vector<std::string>& types() const { return types_; }
  int type_id(std::string_view name) const;  // -1 if unknown
  int type_x() const { return type_x_; }
  int type_robot() const { return type_robot_; }

  const std::vector<FieldSpec>& specs() const { return specs_; }
  const FieldSpec& spec(int id) const { return specs_[static_cast<std::size_t>(id)]; }
  int spec_id(std::string_view name) const;  // -1 if unknown
  int spec_quantity(int spec) const { return spec_quantity_[static_cast<std::size_t>(spec)]; }
  int spec_x() const { return spec_x_; }
  int spec_robot() const { return spec_robot_; }

  const std::vector<std::string>& quantities() const { return quantities_; }
  int quantity_id(std::string_view name) const;  // -1 if unknown
  // Adds a quantity with no specs if needed; such a quantity reads 0 everywhere.
  int intern_quantity(std::string_view name);
  int quantity_x() const { return q_x_; }
  int quantity_robot() const { return q_robot_; }

  // Specs of the given quantity and kind.
  const std::vector<int>& point_specs_of(int q) const { return point_by_q_[static_cast<std::size_t>(q)]; }
  const std::vector<int>& edge_specs_of(int q) const { return edge_by_q_[static_cast<std::size_t>(q)]; }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.sensing_ == b.sensing_ && a.types_ == b.types_ && a.specs_ == b.specs_ &&
           a.quantities_ == b.quantities_;
  }

 private:
  void index_specs();

  Sensing sensing_ = Sensing::ST;
  std::vector<std::string> types_;
  int type_x_ = -1;
  int type_robot_ = -1;
  std::vector<FieldSpec> specs_;
  std::vector<int> spec_quantity_;
  std::vector<std::string> quantities_;
  std::vector<std::vector<int>> point_by_q_;
  std::vector<std::vector<int>> edge_by_q_;
  int spec_x_ = -1;
  int spec_robot_ = -1;
  int q_x_ = -1;
  int q_robot_ = -1;
};

}  // namespace fsr
