#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string_view>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace dscflow {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Local faces of a hexahedron. Face 2*mu lies on the minus side of node
/// direction mu, face 2*mu+1 on the plus side.
inline constexpr int kFacesPerCell = 6;

constexpr int face_axis(int face) noexcept { return face / 2; }

/// (-1)^face: +1 on minus-side faces, -1 on plus-side faces.
constexpr double face_parity(int face) noexcept { return (face % 2 == 0) ? 1.0 : -1.0; }

constexpr int opposite_face(int face) noexcept { return face ^ 1; }

/// Scalar field components carried by every scattering channel.
enum class Field : std::uint8_t { T = 0, Ux = 1, Uy = 2, Uz = 3, P = 4 };

inline constexpr std::size_t kFieldCount = 5;

constexpr std::size_t index(Field f) noexcept { return static_cast<std::size_t>(f); }

constexpr Field velocity_component(int k) noexcept { return static_cast<Field>(1 + k); }

std::string_view field_name(Field f) noexcept;

/// Bit set over Field.
class FieldMask {
 public:
  constexpr FieldMask() = default;
  constexpr FieldMask(std::initializer_list<Field> fields) {
    for (Field f : fields) bits_ |= bit(f);
  }

  static constexpr FieldMask all() { return FieldMask{Field::T, Field::Ux, Field::Uy, Field::Uz, Field::P}; }
  static constexpr FieldMask velocity() { return FieldMask{Field::Ux, Field::Uy, Field::Uz}; }
  static constexpr FieldMask transport() { return FieldMask{Field::T, Field::Ux, Field::Uy, Field::Uz}; }

  constexpr bool contains(Field f) const noexcept { return (bits_ & bit(f)) != 0; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr FieldMask& insert(Field f) noexcept {
    bits_ |= bit(f);
    return *this;
  }
  constexpr FieldMask& erase(Field f) noexcept {
    bits_ &= static_cast<std::uint8_t>(~bit(f));
    return *this;
  }
  constexpr bool operator==(const FieldMask&) const = default;

 private:
  static constexpr std::uint8_t bit(Field f) { return static_cast<std::uint8_t>(1u << index(f)); }
  std::uint8_t bits_ = 0;
};

}  // namespace dscflow
